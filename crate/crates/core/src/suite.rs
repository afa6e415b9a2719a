//! The ten acceptance checks, runnable individually or as named suites.

use std::time::Instant;

use serde::Serialize;

use crate::arith::is_quadratic_residue;
use crate::carrier::build_x;
use crate::catalog::{catalog_actions, ActionClass};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::hopf::{dual_cocycle_p3, HopfStructure};
use crate::oracle::cross_check;
use crate::orbits::{classify, commutative_count, dim_2n2_count, expected_2n2_count, orbits};
use crate::report::P4Census;
use crate::scan::{conjecture_scan, ScanFamily};
use crate::section::section_search;

/// Named groups of criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    PaperCounts,
    Oracle,
    Appendix2,
    Hopf,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "paper-counts" => Ok(Suite::PaperCounts),
            "oracle" => Ok(Suite::Oracle),
            "appendix2" => Ok(Suite::Appendix2),
            "hopf" => Ok(Suite::Hopf),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("suite {other} (suites: paper-counts, oracle, appendix2, hopf, all)"))),
        }
    }

    pub fn criteria(&self) -> Vec<u8> {
        match self {
            Suite::PaperCounts => vec![1, 2, 4, 6, 7, 8, 10],
            Suite::Oracle => vec![3],
            Suite::Appendix2 => vec![5],
            Suite::Hopf => vec![4, 8, 9],
            Suite::All => (1..=10).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!("{} criterion {:>2} {}: {} [{} ms]", if self.passed { "PASS" } else { "FAIL" }, self.id, self.title, self.detail, self.millis)
    }
}

/// Options shared by the criteria.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    /// Largest group order in the oracle sweep.
    pub oracle_max_order: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { oracle_max_order: 27 }
    }
}

pub const TITLES: [&str; 10] = [
    "dimension p^3 counts",
    "dimension p^4 counts",
    "oracle equivalence",
    "dimension 8",
    "non-splitting",
    "dimension 2n^2",
    "commutative counts",
    "self-duality",
    "Hopf axiom property suite",
    "conjecture scan",
];

pub fn run_criterion(id: u8, opts: &SuiteOptions) -> CriterionOutcome {
    let start = Instant::now();
    let result = match id {
        1 => plane_counts(),
        2 => p4_counts(),
        3 => oracle_equivalence(opts.oracle_max_order),
        4 => dimension_eight(),
        5 => non_splitting(),
        6 => two_n_squared(),
        7 => commutative_counts(),
        8 => self_duality(),
        9 => property_suite(),
        10 => scan(),
        _ => Err(Error::Precondition(format!("no criterion {id}"))),
    };
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    let title = TITLES.get(id.wrapping_sub(1) as usize).copied().unwrap_or("unknown").to_string();
    CriterionOutcome { id, title, passed, detail, millis: start.elapsed().as_millis() }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Vec<CriterionOutcome> {
    suite.criteria().into_iter().map(|id| run_criterion(id, opts)).collect()
}

type Check = Result<(bool, String)>;

fn plane_counts() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [3u64, 5, 7] {
        let c = classify(&AbelianGroup::elementary(p, 2), p)?;
        ok &= (c.total as u64, c.nontrivial as u64) == (p + 7, p + 1);
        parts.push(format!("p={p}: ({}, {})", c.total, c.nontrivial));
    }
    Ok((ok, parts.join(", ")))
}

fn p4_counts() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [3u64, 5, 7] {
        let c = P4Census::compute(p)?;
        let expected = if p == 3 { (14, 3, 16, 33) } else { (2 * p + 8, p + 7, 2 * p + 8, 5 * p + 23) };
        ok &= (c.elementary_decomposable, c.elementary_cyclic, c.mixed, c.total) == expected;
        parts.push(format!("p={p}: {}+{}+{}={}", c.elementary_decomposable, c.elementary_cyclic, c.mixed, c.total));
    }
    Ok((ok, parts.join(", ")))
}

fn oracle_equivalence(max_order: u64) -> Check {
    let checks = cross_check(max_order, &[2, 3])?;
    let bad: Vec<String> = checks.iter().filter(|c| !c.matches).map(|c| format!("{} p={} {}", c.group, c.p, c.family)).collect();
    let ok = bad.is_empty() && !checks.is_empty();
    let detail = if bad.is_empty() {
        format!("{} actions with |G| <= {max_order} agree", checks.len())
    } else {
        format!("{} of {} disagree: {}", bad.len(), checks.len(), bad.join("; "))
    };
    Ok((ok, detail))
}

fn find_class(g: &AbelianGroup, p: u64, tag: &str) -> Result<ActionClass> {
    catalog_actions(g, p)?
        .into_iter()
        .find(|c| c.family.tag() == tag)
        .ok_or_else(|| Error::Precondition(format!("no class {tag} for {g}")))
}

/// The noncocommutative algebra on `Z_2 x Z_2` with its presentation relations, sorted.
pub fn h8() -> Result<(HopfStructure, crate::hopf::Presentation)> {
    let g = AbelianGroup::elementary(2, 2);
    let class = find_class(&g, 2, "two-elementary(1)")?;
    let x = build_x(&class)?;
    let rep = orbits(&x)
        .orbits
        .into_iter()
        .find(|o| !o.cocommutative)
        .ok_or_else(|| Error::Precondition("no noncocommutative class on Z2xZ2".into()))?
        .representative;
    let h = HopfStructure::build(&x, &rep)?;
    let mut pres = h.presentation()?;
    pres.relations.sort();
    Ok((h, pres))
}

fn dimension_eight() -> Check {
    let mut nontrivial = 0;
    for g in [AbelianGroup::new(&[4])?, AbelianGroup::elementary(2, 2)] {
        nontrivial += classify(&g, 2)?.nontrivial;
    }
    let (h, pres) = h8()?;
    let report = h.verify_axioms();
    let mut expected = vec!["t x1* t^-1 = x2*", "t x2* t^-1 = x1*", "t^2 = 1", "x1*^2 = 1", "x2*^2 = 1"];
    expected.sort();
    let relations_ok = pres.relations == expected;
    let extra_ok = pres.antipode == ["S(x1*) = x1*", "S(x2*) = x2*", "S(t) = t"] && pres.counit == ["ε(x1*) = 1", "ε(x2*) = 1", "ε(t) = 1"];
    let ok = nontrivial == 1 && h.dim == 8 && report.passed() && relations_ok && extra_ok;
    Ok((ok, format!("nontrivial = {nontrivial}, axioms {}, relations {}", if report.passed() { "pass" } else { "fail" }, if relations_ok && extra_ok { "match" } else { "differ" })))
}

fn non_splitting() -> Check {
    let two = section_search(2)?;
    let three = section_search(3)?;
    let ok = two.section.as_deref() == Some(&[vec![1u64, 1]][..]) && !three.splits();
    Ok((
        ok,
        format!(
            "n=2 section chi_12 = {:?}; n=3 {} after {} of {} assignments",
            two.section.unwrap_or_default(),
            if three.splits() { "splits" } else { "no section" },
            three.nodes,
            three.candidates
        ),
    ))
}

fn two_n_squared() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3u64, 9, 15] {
        let classes = catalog_actions(&AbelianGroup::new(&[n, n])?, 2)?;
        let mut counts = Vec::new();
        for class in &classes {
            let count = dim_2n2_count(n, class)? as u64;
            let expect = expected_2n2_count(class);
            ok &= count == expect;
            if crate::catalog::n_of_action(&class.action) == 1 {
                ok &= count == 1;
            }
            counts.push(count.to_string());
        }
        parts.push(format!("n={n}: [{}]", counts.join(",")));
    }
    Ok((ok, parts.join(", ")))
}

fn commutative_counts() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, p) in [(1usize, 3u64), (2, 3), (2, 5)] {
        let c = commutative_count(n, p)?;
        ok &= c == (3 * n + 2) / 2;
        parts.push(format!("(n={n}, p={p}) -> {c}"));
    }
    for p in [3u64, 5] {
        let c = classify(&AbelianGroup::elementary(p, 2), p)?;
        ok &= c.commutative == 4;
        parts.push(format!("trivial-action part of Z{p}^2 = {}", c.commutative));
    }
    Ok((ok, parts.join(", ")))
}

fn self_duality() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [3u64, 5, 7] {
        let class = find_class(&AbelianGroup::elementary(p, 2), p, "elementary-regular")?;
        let x = build_x(&class)?;
        let r = dual_cocycle_p3(&class, &x)?;
        let half = (p - 1) / 2;
        ok &= r.dual == r.expected && r.same_orbit == is_quadratic_residue(half, p);
        parts.push(format!("p={p}: {}", if r.same_orbit { "self-dual" } else { "not self-dual" }));
    }
    Ok((ok, parts.join(", ")))
}

/// `(G, p)` pairs whose orbit representatives are built and verified.
pub const PROPERTY_GROUPS: [(&[u64], u64); 14] = [
    (&[2, 2], 2),
    (&[4], 2),
    (&[3], 3),
    (&[3, 3], 3),
    (&[5, 5], 5),
    (&[7, 7], 7),
    (&[3, 3, 3], 3),
    (&[9, 3], 3),
    (&[5, 5, 5], 5),
    (&[25, 5], 5),
    (&[3, 3], 2),
    (&[9, 9], 2),
    (&[15, 15], 2),
    (&[2, 2, 2], 2),
];

fn property_suite() -> Check {
    let mut built = 0usize;
    for &(orders, p) in PROPERTY_GROUPS.iter() {
        let g = AbelianGroup::new(orders)?;
        for class in catalog_actions(&g, p)? {
            let x = build_x(&class)?;
            for o in orbits(&x).orbits {
                let h = HopfStructure::build(&x, &o.representative)?;
                let r = h.verify_axioms();
                if let Some(f) = r.failure {
                    return Ok((false, format!("{g} p={p} {} {:?}: {} at {:?}", class.family.tag(), o.representative, f.axiom, f.witness)));
                }
                built += 1;
            }
        }
    }
    let (mut h, _) = h8()?;
    h.corrupt_comult(4 + 1, 0, 1);
    let control = h.verify_axioms().failure;
    let caught = control.as_ref().is_some_and(|f| f.axiom == "comultiplicativity" && !f.witness.is_empty());
    Ok((
        caught,
        format!(
            "{built} algebras pass; mutated control fails at {}",
            control.map_or("nothing".into(), |f| format!("{} with witness {}", f.axiom, f.witness.join(" , ")))
        ),
    ))
}

fn scan() -> Check {
    let r = conjecture_scan(ScanFamily::Plane, &[3, 5, 7], &[11], 1)?;
    let ok = r.fit.equals_integers(&[1, 1]) && r.residuals.iter().all(|x| x.is_zero());
    let res: Vec<String> = r.residuals.iter().map(|x| format!("p={} residual {}", x.p, x.residual)).collect();
    Ok((ok, format!("fit {}; {}", r.polynomial, res.join(", "))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse("oracle").unwrap().criteria(), vec![3]);
        assert_eq!(Suite::All.criteria().len(), 10);
        assert!(Suite::parse("everything").is_err());
        let bad = run_criterion(11, &SuiteOptions::default());
        assert!(!bad.passed && bad.line().starts_with("FAIL"));
    }
}
