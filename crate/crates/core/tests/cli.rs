use std::path::{Path, PathBuf};
use std::process::Command;

use lambda_arc::cli;
use lambda_arc::report::{FuzzSummary, RunReport, VerifyReport};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("lambda-arc").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lambda-arc"))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixture(dir: &TempDir, name: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}.json"));
    let (code, _, err) = run(&["gen", "--name", name, "--out", path_str(&path)]);
    assert_eq!(code, 0, "{err}");
    path
}

#[test]
fn find_on_tent() {
    let dir = TempDir::new().unwrap();
    let arc = fixture(&dir, "tent");
    let (code, out, _) = run(&["find", "--arc", path_str(&arc)]);
    assert_eq!(code, 0);
    let report: RunReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.configs.len(), 1);
    let cfg = &report.configs[0];
    assert!(cfg.theta.radians().abs() < 1e-12);
    assert_eq!(cfg.s, [0.0, 0.5, 1.0]);
    assert_eq!(report.unique, Some(true));
    assert!(report.trace.is_none());
    assert!(report.timing_ms.is_none());
}

#[test]
fn find_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let arc = fixture(&dir, "hook");
    let (_, out, _) = run(&["trace", "--arc", path_str(&arc)]);
    let report: RunReport = serde_json::from_str(&out).unwrap();
    assert!(report.trace.is_some());
    assert_eq!(lambda_arc::report::to_json(&report), out);
}

#[test]
fn timing_is_opt_in() {
    let dir = TempDir::new().unwrap();
    let arc = fixture(&dir, "zigzag");
    let (code, out, _) = run(&["find", "--arc", path_str(&arc), "--timing"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["timing_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn stick_is_degenerate() {
    let dir = TempDir::new().unwrap();
    let arc = fixture(&dir, "stick");
    let (code, out, err) = run(&["find", "--arc", path_str(&arc)]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("DegenerateThickness"), "{err}");
}

#[test]
fn fuzz_hundred_arcs() {
    let (code, out, _) = run(&["fuzz", "--count", "100", "--seed", "7"]);
    assert_eq!(code, 0);
    let summary: FuzzSummary = serde_json::from_str(&out).unwrap();
    assert_eq!(summary.arcs, 100);
    assert_eq!(summary.simple_arcs + summary.non_simple_arcs, 100);
    assert!(summary.failures.is_empty());
    assert_eq!(summary.existence_failures + summary.certificate_failures, 0);
}

#[test]
fn verify_accepts_found_configs_and_rejects_tampered_ones() {
    let dir = TempDir::new().unwrap();
    let arc = fixture(&dir, "tilted-tent");
    let report = dir.path().join("report.json");
    let (code, _, _) = run(&["find", "--arc", path_str(&arc), "--out", path_str(&report)]);
    assert_eq!(code, 0);

    let (code, out, _) = run(&["verify", "--arc", path_str(&arc), "--config", path_str(&report)]);
    assert_eq!(code, 0);
    let verdict: VerifyReport = serde_json::from_str(&out).unwrap();
    assert!(verdict.passed);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let single = dir.path().join("single.json");
    let mut cfg = v["configs"][0].take();
    let x = cfg["points"][1][0].as_f64().unwrap();
    cfg["points"][1][0] = Value::from(x + 0.25);
    std::fs::write(&single, serde_json::to_string(&cfg).unwrap()).unwrap();
    let (code, out, _) = run(&["verify", "--arc", path_str(&arc), "--config", path_str(&single)]);
    assert_eq!(code, 3);
    let verdict: VerifyReport = serde_json::from_str(&out).unwrap();
    assert!(!verdict.passed);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["find", "--bogus"]).0, 1);
    assert_eq!(run(&["gen", "--name", "bogus"]).0, 1);
    assert_eq!(run(&["gen", "--seed", "1"]).0, 1);
    assert_eq!(run(&["find", "--arc", "/nonexistent/arc.json"]).0, 1);

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [[0, 0], [1").unwrap();
    let (code, _, err) = run(&["find", "--arc", path_str(&bad)]);
    assert_eq!(code, 1);
    assert!(err.contains("malformed JSON"), "{err}");
}

#[test]
fn malformed_arc_values() {
    let dir = TempDir::new().unwrap();
    let one = dir.path().join("one.json");
    std::fs::write(&one, r#"{"vertices": [[0, 0]]}"#).unwrap();
    assert_eq!(run(&["find", "--arc", path_str(&one)]).0, 2);
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "--seed", "42", "--n", "20", "--kind", "free"]);
    let b = run(&["gen", "--seed", "42", "--n", "20", "--kind", "free"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 20);
}

#[test]
fn render_writes_svg() {
    let dir = TempDir::new().unwrap();
    let arc = fixture(&dir, "spiral");
    let report = dir.path().join("report.json");
    let svg = dir.path().join("figure.svg");
    run(&["find", "--arc", path_str(&arc), "--out", path_str(&report)]);
    let (code, _, err) = run(&[
        "render", "--arc", path_str(&arc), "--config", path_str(&report), "--out", path_str(&svg),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("<circle").count(), 3);
}

#[test]
fn binary_exit_codes_and_env_tolerance() {
    let dir = TempDir::new().unwrap();
    let arc = fixture(&dir, "tent");

    let plain = binary().args(["find", "--arc", path_str(&arc)]).env_remove(cli::EPS_ENV).output().unwrap();
    assert_eq!(plain.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&plain.stdout).unwrap();
    assert_eq!(v["arc"]["eps_rel"].as_f64(), Some(1e-9));

    let env = binary().args(["find", "--arc", path_str(&arc)]).env(cli::EPS_ENV, "1e-6").output().unwrap();
    let v: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(v["arc"]["eps_rel"].as_f64(), Some(1e-6));

    let flag = binary()
        .args(["find", "--arc", path_str(&arc), "--eps-rel", "1e-7"])
        .env(cli::EPS_ENV, "1e-6")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&flag.stdout).unwrap();
    assert_eq!(v["arc"]["eps_rel"].as_f64(), Some(1e-7));

    let junk = binary().args(["find", "--arc", path_str(&arc)]).env(cli::EPS_ENV, "tiny").output().unwrap();
    assert_eq!(junk.status.code(), Some(1));

    let stick = fixture(&dir, "stick");
    let degenerate = binary().args(["find", "--arc", path_str(&stick)]).output().unwrap();
    assert_eq!(degenerate.status.code(), Some(2));
}
