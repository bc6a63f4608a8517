//! Integration tests of the command-line surface: output shapes, the
//! documented exit-code contract, and byte-level reproducibility.

use std::process::{Command, Output};

fn dmtlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmtlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

/// Data rows of a CSV artifact (comments and header stripped).
fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().expect("numeric cell")).collect())
        .collect()
}

fn header_columns(csv: &str) -> Vec<String> {
    csv.lines()
        .find(|l| !l.starts_with('#') && !l.is_empty())
        .expect("header present")
        .split(',')
        .map(str::to_string)
        .collect()
}

#[test]
fn curve_samples_the_documented_grid() {
    let out = dmtlab(&["curve", "--antennas", "1,2,1", "--r-step", "0.05"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 21);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[0][1], 3.0);
    assert_eq!(header_columns(&csv), ["r", "ddf", "ptp"]);
    assert!(csv.starts_with("# dmtlab "));
    assert!(csv.contains("# config {\"command\":\"curve\""));
}

#[test]
fn curve_matches_known_closed_form_points() {
    let out = dmtlab(&["curve", "--antennas", "2,1,2", "--r-step", "0.5"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout(&out));
    let at_half = rows.iter().find(|row| row[0] == 0.5).expect("r=0.5 sampled");
    assert!((at_half[1] - 3.5).abs() <= 1e-9);

    let out = dmtlab(&["curve", "--antennas", "1,1,1", "--r-step", "1"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][0], rows[0][1]), (0.0, 2.0));
    assert_eq!((rows[1][0], rows[1][1]), (1.0, 0.0));
}

#[test]
fn compare_emits_applicable_closed_forms() {
    let out = dmtlab(&["compare", "--antennas", "1,2,1", "--r-step", "0.25"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let cols = header_columns(&csv);
    assert_eq!(cols, ["r", "ddf_numeric", "ddf_closed", "fundamental", "scf", "ptp"]);
    let rows = data_rows(&csv);
    let quarter = rows.iter().find(|row| row[0] == 0.25).expect("r=0.25 sampled");
    let (ddf, scf) = (quarter[1], quarter[4]);
    assert!(ddf > scf + 0.2, "dynamic {ddf} should clearly beat static {scf}");
}

#[test]
fn compare_matches_full_duplex_curve() {
    let out = dmtlab(&["compare", "--antennas", "2,1,2", "--r-step", "0.125"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let cols = header_columns(&csv);
    let fddf_ix = cols.iter().position(|c| c == "fddf").expect("fddf column");
    for row in data_rows(&csv) {
        if row[0] <= 1.0 {
            assert!(
                (row[1] - row[fddf_ix]).abs() <= 1e-3,
                "r={}: numeric {} vs full-duplex {}",
                row[0],
                row[1],
                row[fddf_ix]
            );
        }
    }
}

#[test]
fn compare_warns_when_no_closed_form_applies() {
    let out = dmtlab(&["compare", "--antennas", "3,3,3", "--r-step", "0.5"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert_eq!(header_columns(&csv), ["r", "ddf_numeric", "ptp"]);
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("no closed-form reference"), "stderr: {err}");
    assert!(csv.contains("# note no closed-form reference"));
}

#[test]
fn simulate_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("run.json");
    let path_s = path.to_str().unwrap();
    let args = [
        "simulate", "--antennas", "1,1,1", "--r", "0.5", "--snr", "20:35:7.5",
        "--trials", "20000", "--seed", "11", "--out", path_s,
    ];
    assert!(dmtlab(&args).status.success());
    let first = std::fs::read(&path).expect("first run written");
    assert!(dmtlab(&args).status.success());
    let second = std::fs::read(&path).expect("second run written");
    assert_eq!(first, second, "rerun changed the artifact");

    let text = String::from_utf8(first).unwrap();
    assert!(text.contains("\"slope\":"));
    assert!(text.contains("\"reference_diversity\": 1.0"));
    assert!(text.contains("\"p_out\":"));
}

#[test]
fn simulate_reports_insufficient_statistics_gracefully() {
    let out = dmtlab(&[
        "simulate", "--antennas", "1,1,1", "--r", "0.5", "--trials", "10",
    ]);
    assert!(out.status.success(), "guarded path still exits 0");
    let text = stdout(&out);
    assert!(text.contains("\"slope\": null"));
    assert!(text.contains("insufficient outage events"));
}

#[test]
fn validate_closedform_suite_passes() {
    let out = dmtlab(&["validate", "closedform"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("suite: closedform"));
    assert!(text.contains("result: PASS"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // Usage errors → 2.
    assert_eq!(dmtlab(&["validate", "bogus"]).status.code(), Some(2));
    assert_eq!(
        dmtlab(&["curve", "--antennas", "0,1,1"]).status.code(),
        Some(2)
    );
    assert_eq!(dmtlab(&["curve"]).status.code(), Some(2));
    assert_eq!(
        dmtlab(&["simulate", "--antennas", "1,1,1", "--r", "1.5", "--trials", "1000"])
            .status
            .code(),
        Some(2),
        "multiplexing gain beyond min(m,n) is a usage error"
    );
    assert_eq!(
        dmtlab(&["curve", "--antennas", "1,1,1", "--r-step", "0"]).status.code(),
        Some(2)
    );

    // Success → 0.
    assert_eq!(
        dmtlab(&["curve", "--antennas", "1,1,1", "--r-step", "0.5"]).status.code(),
        Some(0)
    );
}
