use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracideal")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fracideal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn stickelberger_at_seven() {
    let out = run(&["stickelberger", "--modulus", "7", "--s", "infty,7", "--r", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let coeffs = v["coefficients"].as_object().unwrap();
    let got: Vec<(&str, &str)> = coeffs.iter().map(|(k, v)| (k.as_str(), v.as_str().unwrap())).collect();
    assert_eq!(
        got,
        [("σ1", "5/14"), ("σ2", "-1/14"), ("σ3", "-3/14"), ("σ4", "3/14"), ("σ5", "1/14"), ("σ6", "-5/14")]
    );
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn riemann_zeta_at_minus_one() {
    let out = run(&["lvalue", "--modulus", "1", "--char", "0", "--r", "-1", "--s", "infty"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], "-1/12");
}

#[test]
fn output_is_deterministic() {
    let args = ["ideal", "--family", "cyclotomic", "--ell", "5", "--level", "1", "--r", "0", "--part", "full"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn functoriality_suite_at_three() {
    let out = run(&["check", "--suite", "functoriality", "--ell", "3", "--levels", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn every_suite_runs() {
    let out = run(&["check", "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["stickelberger", "--modulus", "7", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(run(&["stickelberger", "--modulus", "seven"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["brauer-map"]).status.code(), Some(2));
}

#[test]
fn malformed_fixture_names_the_field() {
    let path = temp_file("bad.json", r#"{"schema_version": 1, "data": [{"subgroup": ["()", "(12)"], "alpha": {"()": "1/x"}}]}"#);
    let out = run(&["nc-ideal", "--group", "S3", "--fixture", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("data[0].alpha"), "{err}");
    let path = temp_file("old.json", r#"{"schema_version": 7, "data": []}"#);
    let out = run(&["nc-ideal", "--group", "S3", "--fixture", path.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema_version"));
}

#[test]
fn non_covariant_data_fails_with_exit_one() {
    let path = temp_file(
        "single.json",
        r#"{"schema_version": 1, "data": [{"subgroup": ["()", "(12)"], "alpha": {"()": 1, "(12)": -1}, "beta": {"()": 1}}]}"#,
    );
    let out = run(&["nc-ideal", "--group", "S3", "--fixture", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert!(v["checks"][0]["witness"].is_string());
    let out = run(&["nc-ideal", "--group", "S3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn brauer_map_from_cayley_text() {
    let path = temp_file("c3.txt", "3\n0 1 2\n1 2 0\n2 0 1\n");
    let out = run(&["brauer-map", "--cayley", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["rank"], 3);
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let path = temp_file("run.cfg", "# defaults\nmodulus = 7\ns = infty,7\nr = -1\n");
    let cfg = path.to_str().unwrap();
    let v = json(&run(&["stickelberger", "--config", cfg]));
    assert_eq!(v["inputs"]["r"], -1);
    assert_eq!(v["inputs"]["modulus"], 7);
    let v = json(&run(&["stickelberger", "--config", cfg, "--r", "0"]));
    assert_eq!(v["coefficients"]["σ1"], "5/14");
    assert!(v.get("timing_ms").is_none());
    let v = json(&run(&["stickelberger", "--config", cfg, "--timing"]));
    assert!(v["timing_ms"].is_number());
}
