//! End-to-end checks of the command-line surface: input schemas, output
//! formats, exit codes, and reproducibility.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_centering-lab")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("spawn centering-lab")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn cp_reports_the_sharp_constant() {
    let out = run(&["cp", "--p", "3"]);
    let v = stdout_json(&out);
    let value = v["value"].as_f64().unwrap();
    assert!((value - 1.0957314336981363).abs() < 1e-9);
    // defaults are echoed for reproducibility
    assert_eq!(v["meta"]["seed"], 0);
    assert_eq!(v["meta"]["starts"], 64);
    assert_eq!(v["meta"]["command"], "cp");
    let alpha = v["alpha"].as_f64().unwrap();
    assert!(alpha > 0.0 && alpha < 1.0 / 6.0);
}

#[test]
fn cp_rejects_bad_alpha_with_exit_2() {
    let out = run(&["cp", "--p", "3", "--alpha", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let out = run(&["cp", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gbeta_inf_example() {
    let out = run(&["gbeta", "--p", "inf", "--beta", "0.3"]);
    let v = stdout_json(&out);
    assert!((v["value"].as_f64().unwrap() - 1.4).abs() < 1e-12);
}

#[test]
fn opnorm_on_a_two_point_space_at_p2() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_file(dir.path(), "two.json", r#"{"weights": [0.42, 0.58]}"#);
    let out = run(&[
        "opnorm",
        "--space",
        space.to_str().unwrap(),
        "--p",
        "2",
        "--partition",
        "trivial",
    ]);
    let v = stdout_json(&out);
    assert!((v["report"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["report"]["converged"], true);
}

#[test]
fn opnorm_accepts_partition_files_and_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_file(
        dir.path(),
        "space.json",
        r#"{"weights": [0.25, 0.25, 0.5]}"#,
    );
    let part = write_file(dir.path(), "part.json", r#"{"blocks": [[0, 1], [2]]}"#);
    let out = run(&[
        "opnorm",
        "--space",
        space.to_str().unwrap(),
        "--p",
        "3",
        "--partition",
        part.to_str().unwrap(),
    ]);
    let v = stdout_json(&out);
    // blocks {0,1} is a fair two-point space; {2} contributes 0
    assert!(v["report"]["value"].as_f64().unwrap() > 0.99);

    let matrix = write_file(
        dir.path(),
        "id.json",
        r#"{"rows": [[1, 0, 0], [0, 1, 0], [0, 0, [1, 0]]]}"#,
    );
    let out = run(&[
        "opnorm",
        "--space",
        space.to_str().unwrap(),
        "--p",
        "1.5",
        "--matrix",
        matrix.to_str().unwrap(),
    ]);
    let v = stdout_json(&out);
    assert!((v["report"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn schema_errors_exit_1_and_domain_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = write_file(dir.path(), "bad.json", r#"{"weights": "nope"}"#);
    let out = run(&["opnorm", "--space", bad_json.to_str().unwrap(), "--p", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let missing = dir.path().join("missing.json");
    let out = run(&["opnorm", "--space", missing.to_str().unwrap(), "--p", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let bad_weights = write_file(dir.path(), "w.json", r#"{"weights": [0.4, 0.4]}"#);
    let out = run(&["opnorm", "--space", bad_weights.to_str().unwrap(), "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_matches_the_two_point_constant() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_file(dir.path(), "two.json", r#"{"weights": [0.3, 0.7]}"#);
    let out = run(&["oracle", "--space", space.to_str().unwrap(), "--p", "3"]);
    let v = stdout_json(&out);
    // emitted values are quantized to 12 significant digits
    assert!((v["value"].as_f64().unwrap() - 1.0358894640565382).abs() < 1e-10);
    assert!((v["subset_mass"].as_f64().unwrap() - 0.3).abs() < 1e-12);
}

#[test]
fn mixture_reproduces_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let dist = write_file(
        dir.path(),
        "d.json",
        r#"{"atoms": [[-1.0, 0.625], [1.0, 0.25], [3.0, 0.125]]}"#,
    );
    let out = run(&["mixture", "--dist", dist.to_str().unwrap()]);
    let v = stdout_json(&out);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert!((comps[0]["weight"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((comps[0]["mass1"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((comps[1]["mass1"].as_f64().unwrap() - 0.75).abs() < 1e-12);
    assert!((comps[1]["value2"].as_f64().unwrap() - 3.0).abs() < 1e-12);

    // nonzero mean is a domain error
    let bad = write_file(dir.path(), "bad.json", r#"{"atoms": [[-1.0, 0.4], [1.0, 0.6]]}"#);
    let out = run(&["mixture", "--dist", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nu_and_gamma_exp_family() {
    let out = run(&["nu", "--p", "3", "--n", "8", "--gamma-re", "0"]);
    let v = stdout_json(&out);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let out = run(&[
        "gamma-exp",
        "--p",
        "3",
        "--n",
        "8",
        "--family",
        "mean",
        "--gamma-re",
        "1",
    ]);
    let v = stdout_json(&out);
    assert!(v["lower"].as_f64().unwrap() < 1e-9);
    assert!(v["slack"].as_f64().unwrap().abs() < 1e-6);

    let out = run(&[
        "gamma-exp",
        "--p",
        "3",
        "--n",
        "8",
        "--family",
        "mean",
        "--eigen",
    ]);
    let v = stdout_json(&out);
    assert!(v["min_slack"].as_f64().unwrap() >= -1e-6);
    assert_eq!(v["eigenvalues_tested"].as_array().unwrap().len(), 2);
}

#[test]
fn bcap_certificate_over_json_functions() {
    let dir = tempfile::tempdir().unwrap();
    let values: Vec<String> = (0..40)
        .map(|k| format!("{:.6}", ((k as f64 + 0.5) / 40.0)))
        .collect();
    let fs = write_file(
        dir.path(),
        "fs.json",
        &format!(r#"[{{"cells": 40, "values": [{}]}}]"#, values.join(", ")),
    );
    let out = run(&[
        "bcap",
        "--functions",
        fs.to_str().unwrap(),
        "--p",
        "2",
        "--eps",
        "0.2",
    ]);
    let v = stdout_json(&out);
    let errors = v["per_function_error"].as_array().unwrap();
    assert!(errors[0].as_f64().unwrap() < 0.2);
    assert!(v["norm_bound"].as_f64().unwrap() <= 1.0 + 1e-9);
}

#[test]
fn csv_output_is_rfc4180() {
    let out = run(&["cp-table", "--p", "2,3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p,alpha,value,interpolation_bound\r\n"));
    assert_eq!(text.matches("\r\n").count(), 3);

    let out = run(&["gbeta", "--p", "3", "--cells", "10", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("beta,analytic,numeric\r\n"));
    assert_eq!(text.lines().count(), 10); // header + 9 betas
}

#[test]
fn json_numbers_carry_twelve_significant_digits() {
    let out = run(&["cp", "--p", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1.09573143370e0"), "{text}");
    assert!(text.ends_with('\n'));
}

#[test]
fn identical_configs_give_byte_identical_output() {
    let args = ["nu", "--p", "2.5", "--n", "6", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&["cp", "--p", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("1.21156503128e0"), "{text}");
}

#[test]
fn verify_suite_selection() {
    let out = run(&["verify", "--suite", "constants", "--seed", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("constants/symmetry"));
    assert!(text.contains("RESULT: PASS"));

    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}
