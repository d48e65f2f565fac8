use std::process::{Command, Output};

use serde_json::Value;

fn bimac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimac"))
        .args(args)
        .env_remove("BIMAC_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn e_trivial_and_lowest() {
    let o = bimac(&["E", "--eta", "0,0", "--N", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");

    let o = bimac(&["E", "--eta", "0,1", "--N", "2", "--format", "latex"]);
    assert_eq!(stdout(&o).trim(), "x_{2}");
}

#[test]
fn e_json_has_eigenvalues() {
    let o = bimac(&["--format", "json", "E", "--eta", "1,0"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 2);
    assert_eq!(v["poly"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bimac(&["E", "--eta", "a,b"]).status.code(), Some(2));
    assert_eq!(bimac(&["E", "--eta", "1,0", "--N", "3"]).status.code(), Some(2));
    assert_eq!(bimac(&["P", "--spart", "0,1;", "--N", "3"]).status.code(), Some(2));
    assert_eq!(bimac(&["verify", "--N", "40"]).status.code(), Some(2));
}

#[test]
fn pieri_upper_example_checked() {
    let o = bimac(&[
        "--format", "json", "pieri", "--spart", "2,0;1", "--r", "2", "--variant", "upper", "--N", "5", "--check",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let omegas: Vec<&str> = v["terms"].as_array().unwrap().iter().map(|t| t["omega"].as_str().unwrap()).collect();
    assert_eq!(omegas, ["1,0;3,1", "2,0;1,1,1", "2,0;2,1", "2,1;1,1"]);
    assert_eq!(v["check"], Value::Bool(true));
}

#[test]
fn pieri_lower_example_text() {
    let o = bimac(&["pieri", "--spart", "2,0;1", "--r", "2", "--variant", "lower", "--N", "5"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    assert!(out.contains("3,1;1: 1\n"));
}

#[test]
fn pieri_out_of_range_is_empty() {
    let o = bimac(&["pieri", "--spart", "2,0;1", "--r", "9", "--variant", "lower", "--N", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "P", "--spart", "1,0;2", "--N", "4"];
    assert_eq!(bimac(&args).stdout, bimac(&args).stdout);
}

#[test]
fn eval_at_lambda0_and_elsewhere() {
    let o = bimac(&["--format", "json", "eval", "--spart", "1,0;", "--N", "3", "--sign", "minus"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["at"], "1,0;∅");
    let o = bimac(&["eval", "--spart", "1,0;", "--N", "3", "--at", "2;"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["hecke", "symmetry", "pieri"] {
        let o = bimac(&["verify", "--suite", suite, "--N", "3", "--deg", "2"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains("pass"));
    }
}

#[test]
fn cache_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_bimac"))
            .args(["--format", "json", "P", "--spart", "2,0;1", "--N", "4"])
            .env("BIMAC_CACHE", &path)
            .output()
            .unwrap()
    };
    let first = run();
    let lines = std::fs::read_to_string(&path).unwrap().lines().count();
    assert!(lines > 0);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), lines);

    std::fs::write(&path, "not json\n").unwrap();
    assert_eq!(run().status.code(), Some(1));
}
