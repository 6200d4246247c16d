//! End-to-end exercises of the gravcat binary: output shape, exit codes,
//! and byte-level determinism of the figure pipeline.

use std::path::Path;
use std::process::{Command, Output};

fn gravcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gravcat"))
        .args(args)
        .output()
        .expect("failed to launch gravcat")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn state_prints_entries_and_eigenvalues() {
    let out = gravcat(&["state", "--omega", "0.5", "--gamma", "1.0", "--temp", "0.01"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for key in ["a_minus", "a_plus", "b ", "c ", "d ", "eigenvalues"] {
        assert!(text.contains(key), "missing {key:?} in:\n{text}");
    }
}

#[test]
fn state_accepts_scientific_notation() {
    let out = gravcat(&["state", "--temp", "1e-2", "--omega", "5e-1"]);
    assert!(out.status.success());
}

#[test]
fn state_rejects_bad_domain_with_exit_2() {
    let out = gravcat(&["state", "--temp", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn unknown_flag_exits_2() {
    let out = gravcat(&["state", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn evolve_reports_quantifiers_and_violation() {
    let out = gravcat(&[
        "evolve", "--omega", "0.5", "--gamma", "2", "--temp", "0.01", "--mu", "0.8", "--tau",
        "0.1", "--t", "0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for key in ["f ", "eta", "coherence", "lqfi", "bell_max", "violation = true"] {
        assert!(text.contains(key), "missing {key:?} in:\n{text}");
    }
}

#[test]
fn evolve_f_conflicts_with_t() {
    let out = gravcat(&["evolve", "--f", "0.5", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn evolve_f_bypasses_time() {
    let out = gravcat(&["evolve", "--f", "0.0", "--mu", "0.0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("eta       = 0.000000000000"), "unexpected:\n{text}");
}

#[test]
fn sweep_emits_csv_with_header() {
    let out = gravcat(&["sweep", "--quantity", "coherence", "--x", "t:0:5:11"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("t,f,eta,param2_name,param2_value,quantity,value"));
    // 11 data rows plus metadata/header lines
    assert_eq!(text.lines().filter(|l| l.ends_with(",coherence") || l.contains(",coherence,")).count(), 11);
}

#[test]
fn sweep_rejects_bad_axis_grammar() {
    let out = gravcat(&["sweep", "--x", "t:0:5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_rejects_unknown_quantity() {
    let out = gravcat(&["sweep", "--quantity", "entropy", "--x", "t:0:5:11"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn figure_writes_files_and_is_deterministic() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [dir_a.path(), dir_b.path()] {
        let out = gravcat(&[
            "figure",
            "2a",
            "--out-dir",
            dir.to_str().unwrap(),
            "--svg",
            "--steps",
            "31",
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let read = |dir: &Path, name: &str| std::fs::read(dir.join(name)).unwrap();
    assert_eq!(read(dir_a.path(), "2a.csv"), read(dir_b.path(), "2a.csv"));
    assert_eq!(read(dir_a.path(), "2a.svg"), read(dir_b.path(), "2a.svg"));

    let serial_dir = tempfile::tempdir().unwrap();
    let out = gravcat(&[
        "figure",
        "2a",
        "--out-dir",
        serial_dir.path().to_str().unwrap(),
        "--steps",
        "31",
        "--serial",
    ]);
    assert!(out.status.success());
    assert_eq!(read(dir_a.path(), "2a.csv"), read(serial_dir.path(), "2a.csv"));
}

#[test]
fn figure_rejects_unknown_panel() {
    let out = gravcat(&["figure", "99z"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_grid_passes() {
    let out = gravcat(&["verify", "--grid", "small"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_impossible_tolerance_exits_1() {
    let out = gravcat(&["verify", "--grid", "small", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn verify_rejects_unknown_grid() {
    let out = gravcat(&["verify", "--grid", "huge"]);
    assert_eq!(out.status.code(), Some(2));
}
