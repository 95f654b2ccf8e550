use std::process::Command;

use qbundle_cli::{run_from, Outcome, Run};

fn run(args: &[&str]) -> Run {
    let mut argv = vec!["qbundle"];
    argv.extend_from_slice(args);
    run_from(argv)
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let r = run(&a);
    assert!(r.stderr.is_empty(), "{}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

#[test]
fn irrep_examples() {
    let a1 = json(&["irrep", "--algebra", "A1", "--weight", "3"]);
    assert_eq!(a1["dim"], 4);
    let a2 = json(&["irrep", "--algebra", "A2", "--weight", "1,1"]);
    assert_eq!(a2["dim"], 8);
    assert_eq!(a2["bar_invariant"], true);
    assert_eq!(a2["pass"], true);
    let bad = run(&["irrep", "--algebra", "A1", "--weight", "-1"]);
    assert_eq!(bad.outcome, Outcome::Usage);
    assert!(bad.stderr.contains("not dominant"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["irrep", "--algebra", "G2", "--weight", "1,0"]).outcome, Outcome::Usage);
    assert_eq!(run(&["irrep", "--algebra", "A2", "--weight", "1"]).outcome, Outcome::Usage);
    assert_eq!(run(&["irrep", "--algebra", "A2"]).outcome, Outcome::Usage);
    assert_eq!(run(&["frobnicate"]).outcome, Outcome::Usage);
    assert_eq!(run(&["verify", "--check", "nope"]).outcome, Outcome::Usage);
    assert_eq!(run(&["--format", "yaml", "irrep", "--algebra", "A1", "--weight", "1"]).outcome, Outcome::Usage);
    assert_eq!(run(&["--help"]).outcome, Outcome::Pass);
}

#[test]
fn borel_weil_example_and_inconclusive() {
    let r = run(&["borel-weil", "--algebra", "A1", "--theta", "", "--mu", "-2"]);
    assert_eq!(r.outcome, Outcome::Pass);
    assert!(r.stdout.contains("isomorphic to W(2), dim 3"), "{}", r.stdout);
    let z = json(&["borel-weil", "--algebra", "A1", "--theta", "", "--mu", "2"]);
    assert_eq!(z["status"], "zero");
    assert_eq!(z["found_dim"], 0);
    let short = run(&["borel-weil", "--algebra", "A1", "--theta", "", "--mu", "-2", "--trunc", "1"]);
    assert_eq!(short.outcome, Outcome::Inconclusive);
    let nd = run(&["borel-weil", "--algebra", "A2", "--theta", "1", "--mu", "-1,0"]);
    assert_eq!(nd.outcome, Outcome::Usage);
}

#[test]
fn haar_pair() {
    let h = json(&["haar", "--algebra", "A1", "--pair", "t(1)[1,1]", "star t(1)[1,1]", "--v0", "2"]);
    // q / (q + q⁻¹) at q = 4
    assert_eq!(h["value_at_v0"], "16/17");
    let zero = json(&["haar", "--algebra", "A1", "--pair", "t(1)[1,2]", "star t(1)[1,1]"]);
    assert_eq!(zero["value"], "0");
    let s = json(&["haar", "--algebra", "A1", "--pair", "t(0)[1,1]", "S Sinv t(0)[1,1]"]);
    assert_eq!(s["value"], "1*v^0");
    assert_eq!(run(&["haar", "--algebra", "A1", "--pair", "t(1)[3,1]", "t(1)[1,1]"]).outcome, Outcome::Usage);
}

#[test]
fn sections_table() {
    let r = json(&["sections", "--algebra", "A2", "--theta", "1", "--v", "trivial", "--trunc", "4"]);
    let pieces = r["pieces"].as_array().unwrap();
    assert_eq!(pieces.len(), 15);
    let dim = |l: serde_json::Value| pieces.iter().find(|p| p["lambda"] == l).unwrap()["dim"].as_u64().unwrap();
    // d_λ times the number of Levi-invariant lines in W(λ)
    assert_eq!(dim(serde_json::json!([0, 0])), 1);
    assert_eq!(dim(serde_json::json!([1, 1])), 8);
    assert_eq!(dim(serde_json::json!([2, 2])), 27);
    assert_eq!(dim(serde_json::json!([1, 0])), 0);
    let csv = run(&["--format", "csv", "sections", "--algebra", "A1", "--v", "trivial", "--trunc", "2"]);
    assert_eq!(csv.stdout, "lambda,dim\n(0),1\n(1),0\n(2),3\n");
}

#[test]
fn frobenius_command() {
    let r = json(&["frobenius", "--algebra", "A2", "--theta", "1", "--weight", "1,0", "--v", "1,0"]);
    assert_eq!(r["dim_induced"], r["dim_levi"]);
    assert_eq!(r["dim_levi"], 1);
    assert_eq!(r["pass"], true);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.toml");
    std::fs::write(&path, "algebra = \"A1\"\nweight = \"2\"\nformat = \"json\"\n").unwrap();
    let p = path.to_str().unwrap();
    let from_file: serde_json::Value = serde_json::from_str(&run(&["--config", p, "irrep"]).stdout).unwrap();
    assert_eq!(from_file["dim"], 3);
    let flag: serde_json::Value = serde_json::from_str(&run(&["--config", p, "irrep", "--weight", "4"]).stdout).unwrap();
    assert_eq!(flag["dim"], 5);
    std::fs::write(&path, "colour = 1\n").unwrap();
    assert_eq!(run(&["--config", p, "irrep"]).outcome, Outcome::Usage);
}

#[test]
fn schur_table_mode() {
    let r = run(&["--format", "csv", "verify", "--check", "schur", "--algebra", "A1", "--max-weight", "1"]);
    assert_eq!(r.outcome, Outcome::Pass);
    // (1 + 4)² index quadruples plus the header
    assert_eq!(r.stdout.lines().count(), 26);
    assert!(r.stdout.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn cache_cold_warm_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "--format", "json", "verify", "--check", "schur,dimensions", "--grid", "quick"];
    let cold = run(&args);
    assert_eq!(cold.outcome, Outcome::Pass, "{}", cold.stderr);
    assert!(std::fs::read_dir(d).unwrap().count() > 0);
    let warm = run(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let victim = std::fs::read_dir(d).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&victim).unwrap();
    std::fs::write(&victim, &text[..text.len() / 2]).unwrap();
    let bad = run(&args);
    assert_eq!(bad.outcome, Outcome::Integrity, "{}", bad.stderr);
}

#[test]
fn binary_exit_codes_and_env_cache() {
    let exe = env!("CARGO_BIN_EXE_qbundle");
    let ok = Command::new(exe).args(["irrep", "--algebra", "A1", "--weight", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(exe).args(["irrep", "--algebra", "A1", "--weight", "-1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let inc = Command::new(exe)
        .args(["borel-weil", "--algebra", "A1", "--mu", "-3", "--trunc", "2"])
        .output()
        .unwrap();
    assert_eq!(inc.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(exe)
        .env("QBUNDLE_CACHE_DIR", dir.path())
        .args(["irrep", "--algebra", "A2", "--weight", "1,0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), "{ not json").unwrap();
    }
    let corrupt = Command::new(exe)
        .env("QBUNDLE_CACHE_DIR", dir.path())
        .args(["irrep", "--algebra", "A2", "--weight", "1,0"])
        .output()
        .unwrap();
    assert_eq!(corrupt.status.code(), Some(4));
}
