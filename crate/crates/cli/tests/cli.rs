//! End-to-end tests of the `qcl` binary: output formats, exit codes,
//! and run-to-run determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static UNIQUE: AtomicUsize = AtomicUsize::new(0);
    let tag = UNIQUE.fetch_add(1, Ordering::Relaxed);
    let path = std::env::temp_dir().join(format!(
        "qcl-cli-{}-{tag}-{name}",
        std::process::id()
    ));
    std::fs::write(&path, content).expect("temp file writes");
    path
}

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn balanced_and_true() -> PathBuf {
    write_temp(
        "balanced.json",
        &format!(r#"{{"p": {{"a0": [{H}, 0.0], "a1": [{H}, 0.0]}}, "q": {{"a0": [0.0, 0.0], "a1": [1.0, 0.0]}}}}"#),
    )
}

#[test]
fn prob_prints_twelve_significant_digits() {
    let real = balanced_and_true();
    let out = qcl(&["prob", "p and q", "--real", real.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.500000000000\n");
}

#[test]
fn prob_of_a_classical_truth_is_one() {
    let real = balanced_and_true();
    let out = qcl(&["prob", "q or not q", "--real", real.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1.00000000000\n");
}

#[test]
fn parse_errors_exit_with_two() {
    let real = balanced_and_true();
    let out = qcl(&["prob", "p and", "--real", real.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("parse error"));
}

#[test]
fn unknown_flags_exit_with_two() {
    let out = qcl(&["laws", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_realization_file_exits_with_three() {
    let out = qcl(&["prob", "p", "--real", "/nonexistent/real.json"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn malformed_realization_file_exits_with_three() {
    let real = write_temp(
        "lopsided.json",
        r#"{"p": {"a0": [1.0, 0.0], "a1": [0.5, 0.0]}}"#,
    );
    let out = qcl(&["prob", "p", "--real", real.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unassigned_atoms_exit_with_three() {
    let real = balanced_and_true();
    let out = qcl(&["prob", "p and zz", "--real", real.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("zz"));
}

#[test]
fn eval_amps_prints_one_line_per_basis_vector() {
    let real = balanced_and_true();
    let out = qcl(&[
        "eval",
        "p and q",
        "--real",
        real.to_str().unwrap(),
        "--amps",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "width: 3");
    assert_eq!(lines.len(), 1 + 8);
    assert!(lines[1].starts_with("000 "));
    assert!(lines[8].starts_with("111 "));
}

#[test]
fn check_at_a_realization_reports_the_margin() {
    let real = balanced_and_true();
    let out = qcl(&[
        "check",
        "p",
        "p and p",
        "--real",
        real.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Prob(left) = 0.500000000000"));
    assert!(text.contains("Prob(right) = 0.250000000000"));
    assert!(text.contains("margin = 0.250000000000"));
    assert!(text.contains("verdict: refuted"));
}

#[test]
fn check_search_replays_the_pinned_witness() {
    let out = qcl(&["check", "p", "p and p", "--budget", "50", "--seed", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("counterexample found (source: pinned"));
    assert!(text.contains("margin = 0.250000000000"));
    assert!(text.contains("realization: {"));
}

#[test]
fn check_search_reports_absence_without_claiming_proof() {
    let out = qcl(&["check", "p", "not not p", "--budget", "40", "--seed", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("no counterexample in"));
    assert!(text.contains("absence is not a proof"));
}

#[test]
fn laws_json_runs_are_byte_identical() {
    let args = ["laws", "--json", "--budget", "150", "--seed", "9"];
    let first = qcl(&args);
    let second = qcl(&args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&second));

    let report: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid json");
    assert_eq!(report["schema"], 1);
    assert_eq!(report["laws"].as_array().unwrap().len(), 24);
    assert_eq!(report["pass"], true);
    assert_eq!(report["seed"], 9);
}

#[test]
fn laws_text_mode_lists_every_verdict() {
    let out = qcl(&["laws", "--budget", "150", "--seed", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("excluded-middle"));
    assert!(text.contains("CONFIRMED-FAILS"));
    assert!(text.contains("CONFIRMED-HOLDS-UNREFUTED"));
    assert!(text.lines().last().unwrap().contains("pass"));
}

#[test]
fn gate_xcheck_small_run_passes() {
    let out = qcl(&[
        "gate-xcheck",
        "--max-width",
        "4",
        "--trials",
        "20",
        "--seed",
        "5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("TOFFOLI(1,1)"));
    assert!(text.lines().last().unwrap().contains("pass"));
}

#[test]
fn gate_xcheck_rejects_oversized_widths() {
    let out = qcl(&["gate-xcheck", "--max-width", "13"]);
    assert_eq!(out.status.code(), Some(2));
}
