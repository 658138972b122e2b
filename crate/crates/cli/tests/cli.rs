use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inducibility")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn alphaf_reports_half_integers() {
    let o = run(&["alphaf", "C5"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "inputs", "outputs", "version"]);
    assert_eq!(r["command"], "alphaf");
    assert!(stdout(&o).contains(r#""5/2""#));
}

#[test]
fn count_in_k33() {
    let o = run(&["count", "--host", "EFz_", "--pattern", "C4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    assert_eq!(r["outputs"]["unordered"], 9);
    assert_eq!(r["outputs"]["ordered"], 72);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["rho", "--pattern", "P3"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--host", "not graph6!", "--pattern", "P3"]).status.code(), Some(2));
    let o = run(&["rho", "--pattern", "P3", "-m", "13"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("193367"));
}

#[test]
fn cache_reuse_gives_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["rho", "--pattern", "C4", "-m", "6", "--cache-dir", dir.path().to_str().unwrap()];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache"));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 1);
}

#[test]
fn table_output() {
    let o = run(&["sandwich", "--family", "C6", "-m", "9", "--table"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("field"));
    assert!(out.contains("rho"));
}

#[test]
fn claim_ledger_as_csv() {
    let o = run(&["entropy", "--host", "C8", "--pattern", "C8", "--verify", "claim1", "--csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("edge,j_set,"));
}

#[test]
fn entropy_verifications_pass() {
    for (host, pattern, verify) in [
        ("C5", "C5", "shearer"),
        ("C6", "P5", "path"),
        ("C6", "C6", "c6"),
        ("C7", "P4", "chain"),
    ] {
        let o = run(&["entropy", "--host", host, "--pattern", pattern, "--verify", verify]);
        assert_eq!(o.status.code(), Some(0), "{verify}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
