//! End-to-end tests of the binary: golden outputs, the exit-code contract,
//! and byte-level determinism of seeded reports.

use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hardyrep"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write_gamma4(dir: &Path) -> String {
    let path = dir.join("gamma4.json");
    fs::write(&path, r#"{"base":4,"digits":[0,1],"maxLevel":5}"#).unwrap();
    path.to_str().unwrap().to_string()
}

fn write_gamma3(dir: &Path) -> String {
    let path = dir.join("gamma3.json");
    fs::write(&path, r#"{"base":3,"digits":[0,1],"maxLevel":9}"#).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gamma_gen_golden_output() {
    let out = run(&[
        "gamma",
        "gen",
        "--base",
        "4",
        "--digits",
        "0,1",
        "--max-level",
        "2",
    ]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "{\"base\":4,\"digits\":[0,1],\"elements\":[0,1,4,5,16,17,20,21],\"maxLevel\":2}\n"
    );
}

#[test]
fn cmc_lebesgue_passes_with_zero_residual() {
    let dir = tempfile::tempdir().unwrap();
    let gamma4 = write_gamma4(dir.path());
    let out = run(&[
        "check",
        "cmc",
        "--matrix",
        &format!("diag:{gamma4}"),
        "--measure",
        "lebesgue",
        "--size",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["residual"], 0.0);
    assert_eq!(v["pass"], true);
}

#[test]
fn cmc_obstructed_measure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let gamma4 = write_gamma4(dir.path());
    let gamma3 = write_gamma3(dir.path());
    let built = dir.path().join("built.json");
    let out = run(&[
        "build",
        "measure",
        "--gamma",
        &gamma4,
        "--freq-bound",
        "100",
        "--mass",
        "0.5",
        "--decay",
        "0.5",
        "--out",
        built.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&[
        "check",
        "cmc",
        "--matrix",
        &format!("diag:{gamma3}"),
        "--measure",
        built.to_str().unwrap(),
        "--size",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["pass"], false);
    // The built density carries b_2 = 0.25, and 2 is a ternary difference.
    assert_eq!(v["residual"], 0.125);
}

#[test]
fn usage_errors_exit_two() {
    // Unknown flag.
    let out = run(&[
        "gamma", "gen", "--base", "4", "--digits", "0,1", "--nope", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Unreadable file.
    let out = run(&[
        "gamma",
        "diff",
        "--gamma",
        "/no/such/file.json",
        "--bound",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Malformed JSON.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    let out = run(&[
        "gamma",
        "diff",
        "--gamma",
        bad.to_str().unwrap(),
        "--bound",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));

    // Out-of-range integer argument.
    let out = run(&[
        "measure",
        "fourier",
        "--measure",
        "lebesgue",
        "--k",
        "99999999999999999999",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Invalid measure spec.
    let bad_measure = dir.path().join("bad_measure.json");
    fs::write(&bad_measure, r#"{"type":"trig","b":{"2":1.5}}"#).unwrap();
    let out = run(&[
        "measure",
        "validate",
        "--measure",
        bad_measure.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["ok"], false);
}

#[test]
fn constructive_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let gamma3 = write_gamma3(dir.path());
    let out = run(&[
        "build",
        "measure",
        "--gamma",
        &gamma3,
        "--freq-bound",
        "1000",
        "--mass",
        "0.5",
        "--decay",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no admissible frequency"));
}

#[test]
fn seeded_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let gamma4 = write_gamma4(dir.path());
    let args = [
        "check",
        "reproduce",
        "--matrix",
        &format!("gamma:{gamma4}"),
        "--measure",
        "mu4",
        "--size",
        "32",
        "--count",
        "4",
        "--seed",
        "17",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["seed"], 17);
    assert_eq!(v["route"], "fourier");
}

#[test]
fn vanishing_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let gamma4 = write_gamma4(dir.path());
    let gamma3 = write_gamma3(dir.path());

    let out = run(&[
        "check",
        "vanishing",
        "--measure",
        "mu4",
        "--gamma",
        &gamma4,
        "--bound",
        "4096",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let trig = dir.path().join("b2.json");
    fs::write(&trig, r#"{"type":"trig","b":{"2":0.4}}"#).unwrap();
    let out = run(&[
        "check",
        "vanishing",
        "--measure",
        trig.to_str().unwrap(),
        "--gamma",
        &gamma3,
        "--bound",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["worstOffset"], 2);
}

#[test]
fn kernel_eval_matches_product_value() {
    let out = run(&[
        "kernel", "eval", "--kernel", "k4", "--w", "0.5+0i", "--z", "0.5+0i",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let re = v["value"]["re"].as_f64().unwrap();
    assert!((re - 1.2548828128).abs() < 1e-9, "{re}");
}

#[test]
fn dense_csv_file_round_trips_through_projection_check() {
    let dir = tempfile::tempdir().unwrap();
    let dense = dir.path().join("proj.csv");
    fs::write(&dense, "0.5+0i,0.5+0i\n0.5+0i,0.5+0i\n").unwrap();
    let out = run(&[
        "check",
        "projection",
        "--matrix",
        &format!("dense:{}", dense.to_str().unwrap()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v["residual"].as_f64().unwrap() < 1e-14);

    let bad = dir.path().join("scaled.csv");
    fs::write(&bad, "1+0i,1+0i\n1+0i,1+0i\n").unwrap();
    let out = run(&[
        "check",
        "projection",
        "--matrix",
        &format!("dense:{}", bad.to_str().unwrap()),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_flag_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = run(&[
        "measure",
        "fourier",
        "--measure",
        "mu4",
        "--k",
        "3",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["k"], 3);
    assert!(v["value"]["re"].as_f64().unwrap().abs() < 1e-10);
}

#[test]
fn gram_csv_format_emits_matrix_rows() {
    let out = run(&[
        "kernel",
        "gram",
        "--kernel",
        "szego",
        "--points",
        "0+0i,0.5+0i",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("1+0i,"), "{text}");
}

#[test]
fn table_format_is_key_value_lines() {
    let out = run(&[
        "measure",
        "fourier",
        "--measure",
        "lebesgue",
        "--k",
        "0",
        "--format",
        "table",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("k ")), "{text}");
    assert!(text.contains("value.re"), "{text}");
}

#[test]
fn atomic_measure_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let atomic = dir.path().join("atomic.json");
    fs::write(
        &atomic,
        r#"{"type":"atomic","points":[0.0,0.5],"weights":[0.5,0.5]}"#,
    )
    .unwrap();
    let out = run(&[
        "measure",
        "fourier",
        "--measure",
        atomic.to_str().unwrap(),
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!((v["value"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let dup = dir.path().join("dup.json");
    fs::write(
        &dup,
        r#"{"type":"atomic","points":[0.3,0.3],"weights":[0.5,0.5]}"#,
    )
    .unwrap();
    let out = run(&[
        "measure",
        "fourier",
        "--measure",
        dup.to_str().unwrap(),
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gamma_diff_golden_output() {
    let dir = tempfile::tempdir().unwrap();
    let small = dir.path().join("small.json");
    fs::write(&small, r#"{"elements":[0,1,4,5]}"#).unwrap();
    let out = run(&[
        "gamma",
        "diff",
        "--gamma",
        small.to_str().unwrap(),
        "--bound",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "{\"bound\":10,\"count\":9,\"differences\":[-5,-4,-3,-1,0,1,3,4,5]}\n"
    );
}

#[test]
fn certify_reports_embed_subreports() {
    let dir = tempfile::tempdir().unwrap();
    let gamma4 = write_gamma4(dir.path());
    let built = dir.path().join("built.json");
    run(&[
        "build",
        "measure",
        "--gamma",
        &gamma4,
        "--freq-bound",
        "100",
        "--mass",
        "0.5",
        "--decay",
        "0.5",
        "--out",
        built.to_str().unwrap(),
    ]);
    let out = run(&[
        "build",
        "certify",
        "--measure",
        built.to_str().unwrap(),
        "--gamma",
        &gamma4,
        "--window",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["cmc"]["residual"], 0.0);
    assert_eq!(v["vanishing"]["pass"], true);
    assert_eq!(v["reproduce"]["route"], "quadrature");
}
