use std::path::Path;
use std::process::{Command, Output};

use almost_abelian::hopf::HopfStructure;

fn aah(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aah")).args(args).env_remove("AAH_OUT_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn summary_value(json: &serde_json::Value, key: &str) -> u64 {
    json["summary"].as_array().unwrap().iter().find(|e| e["key"] == key).unwrap_or_else(|| panic!("missing {key}"))["value"].as_u64().unwrap()
}

fn classify_json(group: &str, p: &str) -> serde_json::Value {
    let o = aah(&["classify", "--group", group, "--prime", p, "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn classify_plane() {
    let j = classify_json("Z3xZ3", "3");
    assert_eq!(summary_value(&j, "count.total"), 10);
    assert_eq!(summary_value(&j, "count.nontrivial"), 4);
    let text = stdout(&aah(&["classify", "--group", "Z3^2", "--prime", "3"]));
    assert!(text.contains("total = 10, nontrivial = 4"));
}

#[test]
fn classify_dimension_p4_groups() {
    let j = classify_json("Z5xZ5xZ5", "5");
    assert_eq!(summary_value(&j, "count.class.elementary-decomposable.nontrivial"), 18);
    assert_eq!(summary_value(&j, "count.class.elementary-R3.nontrivial"), 12);
    let j = classify_json("Z9xZ3", "3");
    assert_eq!(summary_value(&j, "count.nontrivial"), 16);
}

#[test]
fn reports_are_byte_identical() {
    for f in ["json", "tsv", "text"] {
        let a = aah(&["classify", "--group", "Z9xZ3", "--prime", "3", "--format", f]);
        let b = aah(&["classify", "--group", "Z9xZ3", "--prime", "3", "--format", f]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn classify_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r/plane.tsv");
    let o = aah(&["classify", "--group", "Z5xZ5", "--prime", "5", "--format", "tsv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let tsv = std::fs::read_to_string(path).unwrap();
    assert!(tsv.starts_with("family\t"));
    assert!(tsv.contains("# count.nontrivial\t6"));
}

#[test]
fn unsupported_and_invalid_inputs_exit_with_two() {
    for args in [
        vec!["classify", "--group", "Z4xZ2", "--prime", "2"],
        vec!["classify", "--group", "Z3xZ3", "--prime", "5"],
        vec!["classify", "--group", "Zq", "--prime", "3"],
        vec!["classify", "--group", "Z3xZ3", "--prime", "3", "--format", "xml"],
        vec!["classify", "--group", "Z3xZ3", "--prime", "3", "--action", "nope"],
        vec!["classify", "--group", "Z5xZ5xZ5", "--prime", "5", "--max-group-order", "100"],
        vec!["verify", "--suite", "everything"],
        vec!["scan", "--family", "Zp^2", "--primes", "3"],
        vec!["export", "--group", "Z3xZ3", "--prime", "3"],
    ] {
        let o = aah(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_suites() {
    let o = aah(&["verify", "--suite", "appendix2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS criterion  5"));
    let o = aah(&["verify", "--suite", "oracle", "--max-order", "27", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j[0]["passed"], true);
    let o = aah(&["verify", "--suite", "paper-counts"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 7);
}

fn exported(dir: &Path) -> Vec<(String, bool)> {
    std::fs::read_to_string(dir.join("manifest.tsv"))
        .unwrap()
        .lines()
        .map(|l| {
            let (stem, flag) = l.split_once('\t').unwrap();
            (stem.to_string(), flag == "nontrivial=true")
        })
        .collect()
}

#[test]
fn export_all_of_order_four_has_one_nontrivial_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let o = aah(&["export", "--group", "Z2xZ2", "--prime", "2", "--all", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let files = exported(dir.path());
    assert_eq!(files.iter().filter(|f| f.1).count(), 1);
    for (stem, nontrivial) in files {
        let text = std::fs::read_to_string(dir.path().join(format!("{stem}.hopf"))).unwrap();
        let h = HopfStructure::parse_structure_file(&text).unwrap();
        assert_eq!(h.dim, 8);
        assert!(h.verify_axioms().passed());
        if nontrivial {
            let pres = std::fs::read_to_string(dir.path().join(format!("{stem}.presentation.txt"))).unwrap();
            assert!(pres.contains("t x1* t^-1 = x2*") && pres.contains("S(t) = t"));
        }
    }
}

#[test]
fn export_one_representative_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_aah"))
        .args(["export", "--group", "Z3xZ3", "--prime", "3", "--rep", "0,1"])
        .env("AAH_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (stem, nontrivial) = exported(dir.path()).remove(0);
    assert!(nontrivial);
    let h = HopfStructure::parse_structure_file(&std::fs::read_to_string(dir.path().join(format!("{stem}.hopf"))).unwrap()).unwrap();
    assert_eq!(h.dim, 27);
    assert!(h.verify_axioms().passed());
    assert_eq!(HopfStructure::parse_structure_file(&h.to_structure_file()).unwrap(), h);
}

#[test]
fn zero_class_has_an_empty_twist() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(aah(&["export", "--group", "Z3xZ3", "--prime", "3", "--rep", "0,0", "--out-dir", d]).status.success());
    let (stem, nontrivial) = exported(dir.path()).remove(0);
    assert!(!nontrivial);
    let text = std::fs::read_to_string(dir.path().join(format!("{stem}.hopf"))).unwrap();
    let twist: Vec<&str> = text.lines().skip_while(|l| *l != "[twist]").skip(1).take_while(|l| !l.starts_with('[')).collect();
    assert!(twist.is_empty());
}

#[test]
fn seeded_export_is_reproducible() {
    let read = |seed: Option<&str>| {
        let dir = tempfile::tempdir().unwrap();
        let mut args = vec!["export", "--group", "Z3xZ3", "--prime", "3", "--rep", "0,1", "--out-dir", dir.path().to_str().unwrap()];
        if let Some(s) = seed {
            args.extend(["--seed", s]);
        }
        assert!(aah(&args).status.success());
        let (stem, _) = exported(dir.path()).remove(0);
        std::fs::read_to_string(dir.path().join(format!("{stem}.hopf"))).unwrap()
    };
    assert_eq!(read(Some("5")), read(Some("5")));
    assert_ne!(read(Some("5")), read(None));
    let h = HopfStructure::parse_structure_file(&read(Some("9"))).unwrap();
    assert!(h.verify_axioms().passed());
}

#[test]
fn scan_fits_the_plane_family() {
    let o = aah(&["scan", "--family", "Zp^2", "--primes", "3,5,7", "--held-out", "11", "--format", "json"]);
    assert!(o.status.success());
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["polynomial"], "p + 1");
    assert_eq!(j["residuals"][0]["residual"], "0");
}
