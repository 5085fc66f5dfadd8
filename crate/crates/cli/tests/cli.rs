use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn uhitlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uhitlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

const DT3: &str = "p cnf 3 5\n1 2 3 0\n-1 -2 -3 0\n-1 2 0\n-2 3 0\n-3 1 0\n";

#[test]
fn check_dt3() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "dt3.cnf", DT3);
    let o = uhitlab(&["check", "dt3.cnf", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["uhit"], true);
    assert_eq!(report["measures"]["delta"], 2);
    assert_eq!(report["irreducible"], true);
}

#[test]
fn check_satisfiable_exits_two() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "sat.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
    let o = uhitlab(&["check", "sat.cnf"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("uhit: false"));
    assert!(stdout(&o).contains("satisfiable: true"));
    let limited = Command::new(env!("CARGO_BIN_EXE_uhitlab"))
        .args(["check", "sat.cnf"])
        .env("UHITLAB_ORACLE_BOUND", "1")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(stdout(&limited).contains("satisfiable: unknown"));
}

#[test]
fn tautology_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "taut.cnf", "p cnf 2 1\n1 2 -1 0\n");
    let o = uhitlab(&["check", "taut.cnf"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2, column 5"), "{err}");
}

#[test]
fn strict_mode_rejects_bad_header() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "short.cnf", "p cnf 3 6\n1 2 3 0\n-1 -2 -3 0\n-1 2 0\n-2 3 0\n-3 1 0\n");
    assert_eq!(uhitlab(&["check", "short.cnf"], dir.path()).status.code(), Some(0));
    assert_eq!(uhitlab(&["--strict", "check", "short.cnf"], dir.path()).status.code(), Some(1));
}

#[test]
fn generate_km() {
    let dir = TempDir::new().unwrap();
    let o = uhitlab(&["generate", "km", "--m", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("p cnf 7 10\n"));
    assert_eq!(uhitlab(&["generate", "km", "--m", "0"], dir.path()).status.code(), Some(1));
}

#[test]
fn enumerate_and_reverify() {
    let dir = TempDir::new().unwrap();
    let o = uhitlab(
        &["enumerate", "--delta", "2", "--nmax", "4", "--nonsingular", "--irreducibility", "-o", "cat.jsonl"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("cat.jsonl")).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert_eq!(uhitlab(&["reverify", "cat.jsonl"], dir.path()).status.code(), Some(0));
    let tampered = text.replacen("\"irreducible\":true", "\"irreducible\":false", 1);
    fs::write(dir.path().join("bad.jsonl"), tampered).unwrap();
    assert_eq!(uhitlab(&["reverify", "bad.jsonl"], dir.path()).status.code(), Some(2));
}

#[test]
fn iso_of_renamed_dt2() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "a.cnf", "p cnf 2 4\n1 2 0\n-1 -2 0\n-1 2 0\n-2 1 0\n");
    write(dir.path(), "b.cnf", "p cnf 9 4\n7 -9 0\n-7 9 0\n7 9 0\n-7 -9 0\n");
    write(dir.path(), "c.cnf", DT3);
    let o = uhitlab(&["iso", "a.cnf", "b.cnf"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "isomorphic");
    assert_eq!(uhitlab(&["iso", "a.cnf", "c.cnf"], dir.path()).status.code(), Some(2));
}

#[test]
fn snf_of_flipped_dt3() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.cnf", "p cnf 3 5\n2 3 0\n-1 -2 -3 0\n-1 2 -3 0\n-2 3 0\n-3 1 0\n");
    let o = uhitlab(&["snf", "f.cnf", "-o", "nf.cnf"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let nf = fs::read_to_string(dir.path().join("nf.cnf")).unwrap();
    assert!(nf.starts_with("c singularity index 1\np cnf"));
    write(dir.path(), "dt2.cnf", "p cnf 2 4\n1 2 0\n-1 -2 0\n-1 2 0\n-2 1 0\n");
    assert_eq!(uhitlab(&["iso", "nf.cnf", "dt2.cnf"], dir.path()).status.code(), Some(0));
}

#[test]
fn factors_of_dt2() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "dt2.cnf", "p cnf 2 4\n1 2 0\n-1 -2 0\n-1 2 0\n-2 1 0\n");
    let o = uhitlab(&["factors", "dt2.cnf"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    let all = uhitlab(&["factors", "dt2.cnf", "--all"], dir.path());
    // 4 singletons, 4 fs-pairs, the whole set.
    assert_eq!(stdout(&all).lines().count(), 9);
}

#[test]
fn flipsearch_with_checkpoint_and_resume() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "dt3.cnf", DT3);
    let o = uhitlab(&["flipsearch", "dt3.cnf", "--checkpoint", "state.jsonl", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let path: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(path["outcome"], "FoundReducible");
    assert_eq!(path["steps"].as_array().unwrap().len(), 1);

    write(dir.path(), "a1.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let o = uhitlab(&["flipsearch", "a1.cnf", "--checkpoint", "a1.jsonl"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = uhitlab(&["flipsearch", "--resume", "a1.jsonl"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("Exhausted"));
}

#[test]
fn verify_suites() {
    let dir = TempDir::new().unwrap();
    let o = uhitlab(&["verify", "core", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let results: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let results = results.as_array().unwrap();
    assert_eq!(results.len(), 6);
    assert!(results.iter().all(|r| r["passed"] == true));
    assert_eq!(uhitlab(&["verify", "bogus"], dir.path()).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(uhitlab(&["frobnicate"], dir.path()).status.code(), Some(1));
    assert_eq!(uhitlab(&["check"], dir.path()).status.code(), Some(1));
    assert_eq!(uhitlab(&["check", "missing.cnf"], dir.path()).status.code(), Some(1));
    assert_eq!(uhitlab(&["--help"], dir.path()).status.code(), Some(0));
}
