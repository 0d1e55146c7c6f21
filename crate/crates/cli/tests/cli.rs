use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dyadic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyadic")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = dyadic(args);
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), json)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dyadic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn construct(name: &str, r: &str, file: &str) -> String {
    let path = scratch(file);
    let p = path.to_str().unwrap().to_string();
    let out = dyadic(&["construct", name, "--r", r, "-o", &p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

fn all_pass(report: &Value) -> bool {
    report["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true)
}

#[test]
fn rank2_seven() {
    let (code, r) = report(&["rank2", "--delta", "7"]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "rank2");
    assert_eq!(r["verdicts"][0]["witness"]["n_max"], 10);
    assert_eq!(r["runtime"], Value::Null);
}

#[test]
fn excluded_minors() {
    let (code, r) = report(&["excluded-minor"]);
    assert_eq!(code, 0);
    let verdicts = r["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 3);
    assert!(verdicts.iter().all(|v| v["witness"]["verdict"] == "EXCLUDED_MINOR"));
}

#[test]
fn projections_of_k4() {
    let (code, r) = report(&["projections", "--r", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"][0]["witness"]["admissible"], 7);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dyadic(&["verify-main", "--r-max", "9"]).status.code(), Some(2));
    assert_eq!(dyadic(&["rank2", "--delta", "0"]).status.code(), Some(2));
    assert_eq!(dyadic(&["modcheck", "--file", "/nonexistent/matrix.txt"]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let a = dyadic(&["verify-main", "--r-max", "3"]);
    let b = dyadic(&["verify-main", "--r-max", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let (_, timed) = report(&["rank2", "--delta", "2", "--timing"]);
    assert!(timed["runtime"]["millis"].is_u64());
}

#[test]
fn modcheck_flags_non_modular_input() {
    let a = construct("A", "3", "a3.txt");
    let (code, r) = report(&["modcheck", "--file", &a]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"][0]["witness"], "max |minor| = 2");
    let (code, _) = report(&["modcheck", "--file", &a, "--delta", "1"]);
    assert_eq!(code, 1);

    let bad = scratch("bad.txt");
    std::fs::write(&bad, "2 3\n1 0 1\n0 1 3\n").unwrap();
    let (code, _) = report(&["modcheck", "--file", bad.to_str().unwrap(), "--totally"]);
    assert_eq!(code, 1);
}

#[test]
fn construct_and_analyze() {
    let a = construct("Aprime", "4", "aprime4.txt");
    let (code, r) = report(&["analyze", "--file", &a, "--clique", "e"]);
    assert_eq!(code, 0, "{r}");
    assert!(all_pass(&r));
    let (code, r) = report(&["classify-extension", "--file", &a, "--clique", "e"]);
    assert_eq!(code, 0);
    assert!(all_pass(&r));

    let t = construct("T", "4", "t4.json");
    let (_, eps) = report(&["epsilon", "--file", &t]);
    let (_, named) = report(&["epsilon", "T", "--r", "4"]);
    assert_eq!(eps["verdicts"][0]["witness"], named["verdicts"][0]["witness"]);
}

#[test]
fn minor_search() {
    let a = construct("A", "3", "a3-minor.txt");
    let (code, r) = report(&["minor", "--host", &a, "--pattern", "U(2,4)"]);
    assert_eq!(code, 0);
    assert!(r["verdicts"][0]["witness"]["mapping"].is_array());
    let (code, r) = report(&["minor", "--host", &a, "--pattern", "F7"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"][0]["witness"], "none");
}
