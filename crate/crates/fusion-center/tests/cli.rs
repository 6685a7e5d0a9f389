use fusion_center::catalog;
use fusion_center::cli::main_with_args;
use fusion_center::skeleton::io::category_to_json;
use serde_json::Value;
use std::path::PathBuf;

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fusion-center-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Runs the CLI with machine output written to a file; returns the exit code and parsed report.
fn run(name: &str, args: &[&str]) -> (i32, Option<Value>) {
    let out = tmp(name);
    let _ = std::fs::remove_file(&out);
    let mut argv = vec!["fusion-center"];
    argv.extend_from_slice(args);
    let o = out.to_string_lossy().to_string();
    argv.extend_from_slice(&["--format", "machine", "--output", &o]);
    let code = main_with_args(argv);
    let json = std::fs::read_to_string(&out).ok().map(|t| serde_json::from_str(&t).unwrap());
    (code, json)
}

#[test]
fn validate_catalog_entry() {
    let (code, rep) = run("validate.json", &["validate", "--category", "Fibonacci"]);
    assert_eq!(code, 0);
    let rep = rep.unwrap();
    assert_eq!(rep["pass"], true);
    let checks = rep["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["id"].as_str().unwrap().contains("pentagon")));
    assert!(checks.iter().all(|c| c["tag"].is_string() && c["residual"].is_number()));
}

#[test]
fn validate_from_file() {
    let path = tmp("ising.json");
    std::fs::write(&path, category_to_json(&catalog::ising()).unwrap()).unwrap();
    let (code, _) = run("file.json", &["validate", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn cp_counterexample_exits_one() {
    let (code, rep) = run("cp.json", &["cp-check", "--category", "VecZ2", "--phi", "{e:1, g:-2}"]);
    assert_eq!(code, 1);
    let rep = rep.unwrap();
    assert_eq!(rep["pass"], false);
    assert_eq!(rep["first_failure"], "cp.window.e,g");
    let min = rep["data"]["windows"][1]["min_eigenvalue"].as_f64().unwrap();
    assert!((min + 1.0).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run("missing.json", &["validate", "--file", "/nonexistent/cat.json"]).0, 2);
    assert_eq!(run("unknown.json", &["validate", "--category", "Nope"]).0, 2);
    assert_eq!(run("none.json", &["validate"]).0, 2);
    assert_eq!(run("bad-phi.json", &["cp-check", "--category", "VecZ2", "--phi", "{e:1, q:2}"]).0, 2);
    assert_eq!(run("ring-only.json", &["center", "--category", "TL(3)"]).0, 2);
    assert_eq!(main_with_args(["fusion-center", "frobnicate"]), 2);
    assert_eq!(main_with_args(["fusion-center", "--help"]), 0);
}

#[test]
fn dims_and_amenability() {
    let (code, rep) = run("dims.json", &["dims", "--category", "TL(3)", "--count", "5"]);
    assert_eq!(code, 0);
    let dims: Vec<f64> = rep.unwrap()["data"].as_array().unwrap().iter().map(|r| r["dim"].as_f64().unwrap()).collect();
    assert_eq!(dims, [1.0, 3.0, 8.0, 21.0, 55.0]);
    let (code, rep) = run("amen.json", &["amenability", "--category", "Fibonacci", "--object", "tau"]);
    assert_eq!(code, 0);
    assert_eq!(rep.unwrap()["data"]["verdict"], "AmenableConsistent");
    let (code, rep) = run("amen-f2.json", &["amenability", "--category", "FreeGroup2", "--object", "a+A+b+B", "--balls", "--truncate", "4,8"]);
    assert_eq!(code, 0);
    assert_eq!(rep.unwrap()["data"]["verdict"], "GapFound");
}

#[test]
fn center_qsystem_and_induce() {
    let (code, rep) = run("center.json", &["center", "--category", "Ising", "--phi", "{1:1, sigma:0, psi:1}"]);
    assert_eq!(code, 0, "{rep:?}");
    let (code, _) = run("q.json", &["qsystem", "--category", "VecZ2"]);
    assert_eq!(code, 0);
    let (code, rep) = run("ind.json", &["induce", "--category", "VecZ2"]);
    assert_eq!(code, 0);
    assert_eq!(rep.unwrap()["pass"], true);
}

#[test]
fn text_format_lists_every_check() {
    let out = tmp("text.txt");
    let code = main_with_args(["fusion-center", "validate", "--category", "VecZ3", "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS")));
    assert!(text.contains("overall: PASS"));
}
