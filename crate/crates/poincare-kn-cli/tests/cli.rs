//! End-to-end tests of the binary: exit codes, CSV shape, SVG shape, and
//! determinism for a fixed seed.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poincare-kn"))
        .args(args)
        .env_remove("POINCARE_KN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn constants_csv_point() {
    let out = run(&["constants", "--n", "3", "--p", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,p,c_two_level,c_symmetric,c_dirac,regime,sharp_constant"
    );
    let row = lines.next().unwrap();
    assert_eq!(row, "3,3,0.18518518518518517,0.2,0.18518518518518517,symmetric,0.2");
    assert_eq!(lines.next(), None);
}

#[test]
fn constants_gap_row_has_empty_sharp_constant() {
    let out = run(&["constants", "--n", "3", "--p", "3.5", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.ends_with(",gap,"), "row: {row}");
}

#[test]
fn constants_p2_candidates_coincide() {
    let out = run(&["constants", "--n", "3", "--p", "2", "--format", "csv"]);
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[2], fields[3]);
    assert_eq!(fields[3], fields[4]);
}

#[test]
fn verify_passes_at_p2_and_skips_gap() {
    let out = run(&["verify", "--n", "3", "--p", "2,3.5", "--format", "csv"]);
    assert!(out.status.success(), "exit: {:?}", out.status);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].ends_with(",pass"), "row: {}", rows[0]);
    assert!(rows[1].ends_with(",skip"), "row: {}", rows[1]);
    assert!(rows[0].starts_with("3,2,p2,0.3333333333333333,"));
}

#[test]
fn verify_unattainable_tolerance_exits_1() {
    // the numeric-vs-formula gap at (3, 1.5) is one ulp (~1e-16), beyond
    // this tolerance, so the run must report failure through the exit code
    let out = run(&["verify", "--n", "3", "--p", "1.5", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn proofcheck_subset_runs_clean() {
    let out = run(&[
        "proofcheck",
        "--only",
        "proposition_p4,mvt_bound",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert!(row.ends_with(",true"), "row: {row}");
    }
}

#[test]
fn proofcheck_narrowed_grid() {
    let out = run(&[
        "proofcheck",
        "--n",
        "3",
        "--p",
        "1.99",
        "--only",
        "series_p_lt_2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("series_p_lt_2"));
}

#[test]
fn proofcheck_rejects_unknown_check() {
    let out = run(&["proofcheck", "--only", "no_such_check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_gap_csv_rows_and_lower_bound() {
    let out = run(&["scan-gap", "--n", "3", "--steps", "12", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "p,numeric_sup,best_candidate,family");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        let sup: f64 = fields[1].parse().unwrap();
        let cand: f64 = fields[2].parse().unwrap();
        assert!(sup >= cand - 1e-6, "row: {row}");
    }
}

#[test]
fn scan_gap_is_deterministic_for_fixed_seed() {
    let a = run(&["scan-gap", "--n", "3", "--steps", "8", "--seed", "7", "--format", "csv"]);
    let b = run(&["scan-gap", "--n", "3", "--steps", "8", "--seed", "7", "--format", "csv"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(a.status.success());
}

#[test]
fn scan_gap_svg_is_well_formed() {
    let out = run(&["scan-gap", "--n", "3", "--steps", "8", "--format", "svg"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("<?xml version=\"1.0\""));
    assert!(text.contains("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""));
    assert!(text.trim_end().ends_with("</svg>"));
    // numeric sup plus the three candidate curves
    assert_eq!(text.matches("<polyline").count(), 4);
    assert!(text.contains("numeric sup"));
}

#[test]
fn svg_output_to_file() {
    let dir = std::env::temp_dir().join("poincare-kn-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gap3.svg");
    let out = run(&[
        "scan-gap",
        "--n",
        "3",
        "--steps",
        "8",
        "--format",
        "svg",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.contains("</svg>"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn constants_svg_plots_three_candidates() {
    let out = run(&["constants", "--n", "4", "--p", "2..5:40", "--format", "svg"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("<polyline").count(), 3);
    for name in ["two-level", "symmetric", "dirac"] {
        assert!(text.contains(name), "legend missing {name}");
    }
    // a single p value cannot be plotted
    let out = run(&["constants", "--n", "4", "--p", "3", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["constants", "--n", "2", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["constants", "--n", "3", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "3..x", "--p", "2"]).status.code(), Some(2));
    assert_eq!(run(&["scan-gap", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn threads_flag_and_env_are_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_poincare-kn"))
        .args(["constants", "--n", "3", "--p", "2", "--threads", "1"])
        .env("POINCARE_KN_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
}
