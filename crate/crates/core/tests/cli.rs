use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangent-prolong"))
        .args(args)
        .env_remove("TANGENT_PROLONG_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
#[allow(clippy::approx_constant)]
fn prolong_gl1_matches_scalar_formula() {
    let out = run(&["prolong", "--rep", "gl_identity(1)", "--a-coords", "0.6931", "--fiber", "3"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let a = 0.6931_f64.exp();
    let p = &report["prolongation"];
    assert!((p["r"][0][0].as_f64().unwrap() - a).abs() < 1e-12);
    assert!((p["kr"][0][0].as_f64().unwrap() - 3.0 * a).abs() < 1e-12);
    assert_eq!(report["checks"][0]["verdict"], "Pass");
}

#[test]
fn prolong_circle_prints_generator_block() {
    let out = run(&["prolong", "--rep", "circle_rotation", "--a-coords", "0", "--fiber", "1"]);
    assert_eq!(code(&out), 0);
    let k = &json(&out)["prolongation"]["k"];
    assert_eq!(k, &serde_json::json!([[0.0, 1.0], [-1.0, 0.0]]));
}

#[test]
fn prolong_identity_is_identity() {
    let out = run(&["prolong", "--rep", "so3_standard", "--a-coords", "0,0,0", "--fiber", "0,0,0"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["prolongation"]["identity"], true);
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        vec!["prolong", "--rep", "so3_standard", "--a-coords", "0,0", "--fiber", "0,0,0"],
        vec!["prolong", "--rep", "circle_rotation", "--a-coords", "x", "--fiber", "1"],
        vec!["prolong", "--rep", "no_such_rep", "--a-coords", "0", "--fiber", "1"],
        vec!["check", "--rep", "trivial(2)", "--suite", "bogus"],
        vec!["check", "--rep", "trivial(2)", "--samples", "0"],
        vec!["catalog", "--kind", "torus"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn check_exit_codes() {
    let out = run(&["check", "--rep", "circle_rotation", "--suite", "all"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    for c in report["checks"].as_array().unwrap() {
        assert_ne!(c["verdict"], "Fail", "{c}");
    }

    let out = run(&["check", "--rep", "circle_winding_2", "--suite", "faithfulness"]);
    assert_eq!(code(&out), 1);
    let check = &json(&out)["checks"][0];
    assert_eq!(check["verdict"], "Fail");
    assert_eq!(check["witness"]["kind"], "kernel_collision");

    let out = run(&["check", "--rep", "trivial(2)", "--suite", "homomorphism"]);
    assert_eq!(code(&out), 0);
    let check = &json(&out)["checks"][0];
    assert_eq!(check["verdict"], "Pass");
    assert_eq!(check["max_residual"], 0.0);
}

#[test]
fn report_schema_and_seed_override() {
    let out = run(&["check", "--rep", "sl2_standard", "--suite", "homomorphism", "--seed", "5"]);
    let report = json(&out);
    for key in ["command", "config", "checks", "version"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["config"]["seed"], 5);
    assert!(report["config"].get("output").is_none());

    let env_out = Command::new(env!("CARGO_BIN_EXE_tangent-prolong"))
        .args(["check", "--rep", "sl2_standard", "--suite", "homomorphism"])
        .env("TANGENT_PROLONG_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(env_out.stdout, out.stdout);
}

#[test]
fn catalog_listing_and_filter() {
    let out = run(&["catalog"]);
    assert_eq!(code(&out), 0);
    let all = json(&out)["catalog"].as_array().unwrap().len();
    assert!(all >= 8);
    let out = run(&["catalog", "--kind", "circle"]);
    assert_eq!(code(&out), 0);
    let circles = json(&out)["catalog"].as_array().unwrap().clone();
    assert!(!circles.is_empty() && circles.len() < all);
    assert!(circles.iter().all(|e| e["group"]["kind"] == "circle"));
    let out = run(&["--format", "csv", "catalog"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), all + 1);
}

#[test]
fn descriptor_path_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let descriptor = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/descriptors/so3_generators.json");
    let out = run(&[
        "check",
        "--rep",
        descriptor,
        "--suite",
        "homomorphism",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let mut reader = csv::Reader::from_path(&path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "verdict"));
    assert_eq!(reader.records().count(), 2);

    let rejected = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/descriptors/so3_perturbed.json");
    let out = run(&["check", "--rep", rejected, "--suite", "homomorphism"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rejected"));
}

#[test]
fn text_format_is_readable() {
    let out = run(&["--format", "text", "prolong", "--rep", "circle_rotation", "--a-coords", "0", "--fiber", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("K  = [[0, 1], [-1, 0]]"), "{text}");
}
