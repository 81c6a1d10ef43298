use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiact")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn coeffs(v: &Value) -> Vec<i64> {
    v["result_poly"]["coeffs"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect()
}

#[test]
fn fa_of_small_flat_matrix() {
    let out = run(&["fa", "--matrix", &data("flat3.json"), "--rho-trials", "5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(coeffs(&r), vec![2, 2]);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn fa_of_standard_orientation() {
    let out = run(&["fa", "--bigraph", &data("c4.json"), "--standard-orientation"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(coeffs(&report(&out)).iter().sum::<i64>(), 4);
}

#[test]
fn tree_polynomial_of_two_cycle() {
    let out = run(&["pd", "--digraph", &data("two_cycle.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(coeffs(&report(&out)), vec![1, 1]);
}

#[test]
fn non_eulerian_input_is_rejected() {
    let out = run(&["verify", "thm5_3", "--digraph", &data("path.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Eulerian"));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["pd", "--digraph", &data("absent.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn box_certificate_failure_exits_one() {
    let out = run(&["boxcert", "--poly", &data("one_plus_t2.json"), "--d", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn explore_needs_trials() {
    let out = run(&["explore", "--family", "tp", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn explore_tp_finds_only_trapezoidal() {
    let out = run(&["explore", "--family", "tp", "--trials", "50", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["details"]["summary"]["trapezoidal"], 50);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["explore", "--family", "random-flat", "--trials", "12", "--seed", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["explore", "--family", "random-flat", "--trials", "12", "--seed", "6"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn random_tp_is_reproducible() {
    let args = ["tp", "--random", "--d", "3", "--n", "6", "--seed", "9"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&args).stdout);
}

#[test]
fn bad_usage_exits_two() {
    assert_eq!(run(&["fa"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
