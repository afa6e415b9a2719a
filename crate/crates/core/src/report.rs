//! Classification reports in JSON, TSV and text, with keyed summary blocks.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::orbits::{classify, Classification};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "text" => Ok(Format::Text),
            other => Err(Error::Parse(format!("output format {other}"))),
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
            Format::Text => "txt",
        }
    }
}

/// One keyed number in a summary block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryEntry {
    pub key: String,
    pub value: u64,
}

fn entry(key: impl Into<String>, value: usize) -> SummaryEntry {
    SummaryEntry { key: key.into(), value: value as u64 }
}

/// Totals and per-class counts of a classification.
pub fn summary_block(c: &Classification) -> Vec<SummaryEntry> {
    let mut out = vec![
        entry("count.total", c.total),
        entry("count.nontrivial", c.nontrivial),
        entry("count.commutative", c.commutative),
        entry("count.cocommutative", c.cocommutative),
    ];
    for r in &c.classes {
        out.push(entry(format!("count.class.{}.orbits", r.family), r.orbits.total));
        out.push(entry(format!("count.class.{}.nontrivial", r.family), r.nontrivial()));
    }
    out
}

/// Nontrivial isotypes of dimension `p^4`, split by the group and the action type.
#[derive(Debug, Clone, Serialize)]
pub struct P4Census {
    pub p: u64,
    pub elementary_decomposable: u64,
    pub elementary_cyclic: u64,
    pub mixed: u64,
    pub total: u64,
}

impl P4Census {
    pub fn compute(p: u64) -> Result<Self> {
        let cube = classify(&AbelianGroup::elementary(p, 3), p)?;
        let mixed = classify(&AbelianGroup::new(&[p * p, p])?, p)?;
        let a1 = cube.nontrivial_in("elementary-decomposable") as u64;
        let a2 = cube.nontrivial_in("elementary-R3") as u64;
        let b = mixed.nontrivial as u64;
        Ok(P4Census { p, elementary_decomposable: a1, elementary_cyclic: a2, mixed: b, total: a1 + a2 + b })
    }

    pub fn block(&self) -> Vec<SummaryEntry> {
        vec![
            entry("count.dim-p4.elementary-rank3-decomposable", self.elementary_decomposable as usize),
            entry("count.dim-p4.elementary-rank3-cyclic", self.elementary_cyclic as usize),
            entry("count.dim-p4.rank2-mixed", self.mixed as usize),
            entry("count.dim-p4.total", self.total as usize),
        ]
    }
}

/// One row per orbit.
pub fn orbit_rows(c: &Classification) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for r in &c.classes {
        let t: Vec<String> = r.t_images.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
        for o in &r.orbits.orbits {
            rows.push(vec![
                r.family.clone(),
                t.join(";"),
                o.representative.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                o.size.to_string(),
                o.a_orbit_size.to_string(),
                o.cocommutative.to_string(),
                (!o.cocommutative && !r.trivial_action).to_string(),
            ]);
        }
    }
    rows
}

pub const TSV_HEADER: [&str; 7] = ["family", "t_images", "representative", "orbit_size", "a_orbit_size", "cocommutative", "nontrivial"];

#[derive(Serialize)]
struct JsonReport<'a> {
    group: &'a str,
    p: u64,
    dimension: u64,
    summary: Vec<SummaryEntry>,
    classes: &'a [crate::orbits::ClassReport],
}

/// Serializes a classification; identical input gives byte-identical output.
pub fn render(c: &Classification, format: Format) -> String {
    match format {
        Format::Json => {
            let j = JsonReport { group: &c.group, p: c.p, dimension: c.order * c.p, summary: summary_block(c), classes: &c.classes };
            serde_json::to_string_pretty(&j).expect("report serializes") + "\n"
        }
        Format::Tsv => {
            let mut s = TSV_HEADER.join("\t") + "\n";
            for row in orbit_rows(c) {
                s.push_str(&row.join("\t"));
                s.push('\n');
            }
            for e in summary_block(c) {
                let _ = writeln!(s, "# {}\t{}", e.key, e.value);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "Ext(kC_{}, k^G), G = {}, dimension {}", c.p, c.group, c.order * c.p);
            for r in &c.classes {
                let _ = writeln!(
                    s,
                    "  {:<28} |X| = {:<6} orbits = {:<4} nontrivial = {}",
                    r.family,
                    r.orbits.x_order,
                    r.orbits.total,
                    r.nontrivial()
                );
            }
            let _ = writeln!(s, "  total = {}, nontrivial = {}, commutative = {}, cocommutative = {}", c.total, c.nontrivial, c.commutative, c.cocommutative);
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_report_is_deterministic_and_keyed() {
        let g = AbelianGroup::elementary(3, 2);
        let c = classify(&g, 3).unwrap();
        for f in [Format::Json, Format::Tsv, Format::Text] {
            assert_eq!(render(&c, f), render(&classify(&g, 3).unwrap(), f));
        }
        let block = summary_block(&c);
        assert!(block.contains(&SummaryEntry { key: "count.total".into(), value: 10 }));
        assert!(block.contains(&SummaryEntry { key: "count.nontrivial".into(), value: 4 }));
        let json: serde_json::Value = serde_json::from_str(&render(&c, Format::Json)).unwrap();
        assert_eq!(json["dimension"], 27);
        let tsv = render(&c, Format::Tsv);
        let rows = tsv.lines().filter(|l| !l.starts_with('#')).count() - 1;
        assert_eq!(rows, 10);
        assert_eq!(tsv.lines().filter(|l| l.ends_with("\ttrue")).count(), 4);
    }

    #[test]
    fn p4_census_for_three() {
        let c = P4Census::compute(3).unwrap();
        assert_eq!((c.elementary_decomposable, c.elementary_cyclic, c.mixed, c.total), (14, 3, 16, 33));
        assert_eq!(c.block().last().unwrap().value, 33);
    }

    #[test]
    fn format_names() {
        assert_eq!(Format::parse("tsv").unwrap(), Format::Tsv);
        assert!(Format::parse("xml").is_err());
    }
}
