//! `aah`: classify, cross-check, export and scan from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use almost_abelian::aut::Budget;
use almost_abelian::carrier::{build_x, ClassifyingGroup};
use almost_abelian::catalog::{catalog_actions_with, ActionClass};
use almost_abelian::hopf::HopfStructure;
use almost_abelian::orbits::{classify_classes, orbits};
use almost_abelian::report::{render, Format};
use almost_abelian::scan::{conjecture_scan, ScanFamily};
use almost_abelian::suite::{run_suite, Suite, SuiteOptions};
use almost_abelian::{AbelianGroup, Error};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(name = "aah", version, about = "Exact classification of abelian extensions of kC_p by k^G")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit tables and totals for every cataloged action class.
    Classify(ClassifyArgs),
    /// Run an acceptance suite.
    Verify(VerifyArgs),
    /// Write structure constants and presentations of orbit representatives.
    Export(ExportArgs),
    /// Fit nontrivial counts of a group family by a polynomial in p.
    Scan(ScanArgs),
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// Group descriptor such as `Z9xZ3` or `Z3^2`.
    #[arg(long)]
    group: String,
    #[arg(long)]
    prime: u64,
    /// Restrict to one action family tag.
    #[arg(long)]
    action: Option<String>,
    /// Largest accepted group order.
    #[arg(long, default_value_t = Budget::default().max_group_order)]
    max_group_order: u64,
    /// Largest number of endomorphism candidates enumerated.
    #[arg(long, default_value_t = Budget::default().max_candidates)]
    max_automorphisms: u128,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// paper-counts, oracle, appendix2, hopf or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 27)]
    max_order: u64,
    /// text or json.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    target: Target,
    /// Export every orbit representative.
    #[arg(long, conflicts_with = "rep")]
    all: bool,
    /// Coordinates of one element of X, comma separated.
    #[arg(long)]
    rep: Option<String>,
    #[arg(long, env = "AAH_OUT_DIR", default_value = "aah-out")]
    out_dir: PathBuf,
    /// Shift each representative by a seeded coboundary that keeps its class.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Zp, Zp^2, Zp^3, Zp^3:decomposable or Zp^2xZp.
    #[arg(long)]
    family: String,
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    held_out: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    degree: usize,
    #[arg(long, default_value = "text")]
    format: String,
}

/// Failure with its exit code.
#[derive(Debug)]
enum Failure {
    Verification(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(format!("i/o: {e}"))
    }
}

type Outcome = Result<String, Failure>;

/// Group, prime and classes, validated before any orbit computation.
struct RunConfig {
    group: AbelianGroup,
    p: u64,
    classes: Vec<ActionClass>,
}

impl RunConfig {
    fn from_target(t: &Target) -> Result<Self, Failure> {
        let group = AbelianGroup::parse(&t.group)?;
        if group.order() > t.max_group_order {
            return Err(Failure::Input(format!("|G| = {} exceeds --max-group-order {}", group.order(), t.max_group_order)));
        }
        let budget = Budget { max_group_order: t.max_group_order, max_candidates: t.max_automorphisms };
        let mut classes = catalog_actions_with(&group, t.prime, budget)?;
        if let Some(tag) = &t.action {
            classes.retain(|c| &c.family.tag() == tag);
            if classes.is_empty() {
                return Err(Failure::Input(format!("no action class `{tag}` for {} with p = {}", group.descriptor(), t.prime)));
            }
        }
        Ok(RunConfig { group, p: t.prime, classes })
    }
}

fn write_or_return(text: String, out: &Option<PathBuf>) -> Outcome {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, text)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(text),
    }
}

fn cmd_classify(a: &ClassifyArgs) -> Outcome {
    let format = Format::parse(&a.format)?;
    let cfg = RunConfig::from_target(&a.target)?;
    let c = classify_classes(&cfg.group, cfg.p, &cfg.classes)?;
    write_or_return(render(&c, format), &a.out)
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let suite = Suite::parse(&a.suite)?;
    let json = match a.format.as_str() {
        "json" => true,
        "text" => false,
        other => return Err(Failure::Input(format!("output format {other}"))),
    };
    let outcomes = run_suite(suite, &SuiteOptions { oracle_max_order: a.max_order });
    let text = if json {
        serde_json::to_string_pretty(&outcomes).expect("outcomes serialize") + "\n"
    } else {
        outcomes.iter().map(|o| o.line() + "\n").collect()
    };
    if outcomes.iter().all(|o| o.passed) {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn file_stem(g: &AbelianGroup, p: u64, family: &str, coords: &[u64]) -> String {
    let rep: Vec<String> = coords.iter().map(|v| v.to_string()).collect();
    let clean: String = family.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    format!("{}-p{p}-{clean}-x{}", g.descriptor(), if rep.is_empty() { "0".into() } else { rep.join("_") })
}

fn export_one(x: &ClassifyingGroup, class: &ActionClass, coords: &[u64], dir: &Path, rng: Option<&mut ChaCha8Rng>) -> Result<(String, bool), Failure> {
    let h = match rng {
        Some(r) => {
            let f: Vec<u64> = (0..x.tables.n).map(|_| r.random_range(0..x.modulus)).collect();
            HopfStructure::build_perturbed(x, coords, &f)?
        }
        None => HopfStructure::build(x, coords)?,
    };
    let report = h.verify_axioms();
    if let Some(f) = report.failure {
        return Err(Failure::Verification(format!("{} {:?}: axiom {} fails at {}\n", class.family.tag(), coords, f.axiom, f.witness.join(", "))));
    }
    let stem = file_stem(x.group(), x.action.p(), &class.family.tag(), &x.reduce(coords));
    fs::write(dir.join(format!("{stem}.hopf")), h.to_structure_file())?;
    fs::write(dir.join(format!("{stem}.presentation.txt")), h.presentation()?.text())?;
    let nontrivial = !class.action.is_trivial() && !x.is_cocommutative(coords);
    Ok((stem, nontrivial))
}

fn cmd_export(a: &ExportArgs) -> Outcome {
    let cfg = RunConfig::from_target(&a.target)?;
    let rep: Option<Vec<u64>> = match &a.rep {
        Some(s) => Some(
            s.split(',')
                .map(|v| v.trim().parse::<u64>().map_err(|_| Failure::Input(format!("bad coordinate `{v}`"))))
                .collect::<Result<_, _>>()?,
        ),
        None if a.all => None,
        None => return Err(Failure::Input("pass --all or --rep".into())),
    };
    let mut rng = a.seed.map(ChaCha8Rng::seed_from_u64);
    fs::create_dir_all(&a.out_dir)?;
    let mut lines = Vec::new();
    match rep {
        Some(coords) => {
            let candidates: Vec<&ActionClass> = if a.target.action.is_some() || cfg.classes.len() == 1 {
                cfg.classes.iter().collect()
            } else {
                cfg.classes.iter().filter(|c| !c.action.is_trivial()).collect()
            };
            let [class] = candidates[..] else {
                return Err(Failure::Input("several action classes match; choose one with --action".into()));
            };
            let x = build_x(class)?;
            if coords.len() != x.dim() {
                return Err(Error::Shape { expected: x.dim(), found: coords.len() }.into());
            }
            let (stem, nontrivial) = export_one(&x, class, &coords, &a.out_dir, rng.as_mut())?;
            lines.push(format!("{stem}\tnontrivial={nontrivial}"));
        }
        None => {
            for class in &cfg.classes {
                let x = build_x(class)?;
                for o in orbits(&x).orbits {
                    let (stem, nontrivial) = export_one(&x, class, &o.representative, &a.out_dir, rng.as_mut())?;
                    lines.push(format!("{stem}\tnontrivial={nontrivial}"));
                }
            }
        }
    }
    let nontrivial = lines.iter().filter(|l| l.ends_with("nontrivial=true")).count();
    let manifest = lines.join("\n") + "\n";
    fs::write(a.out_dir.join("manifest.tsv"), &manifest)?;
    Ok(format!("{manifest}exported {} algebras ({nontrivial} nontrivial) to {}\n", lines.len(), a.out_dir.display()))
}

fn cmd_scan(a: &ScanArgs) -> Outcome {
    let family = ScanFamily::parse(&a.family)?;
    let r = conjecture_scan(family, &a.primes, &a.held_out, a.degree)?;
    Ok(match a.format.as_str() {
        "json" => serde_json::to_string_pretty(&r).expect("scan serializes") + "\n",
        "text" => {
            let pts: Vec<String> = r.points.iter().map(|(p, n)| format!("N({p}) = {n}")).collect();
            let mut s = format!("family {}: {}\nfit N(p) = {}\n", r.family, pts.join(", "), r.polynomial);
            for x in &r.residuals {
                s.push_str(&format!("held out p = {}: observed {}, predicted {}, residual {}\n", x.p, x.observed, x.predicted, x.residual));
            }
            s
        }
        other => return Err(Failure::Input(format!("output format {other}"))),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Export(a) => cmd_export(a),
        Command::Scan(a) => cmd_scan(a),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("aah: {msg}");
            ExitCode::from(2)
        }
    }
}
