use std::fs;

use artor::cli::run_cli_with;
use artor::corpus::BatchResult;

fn run(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("artor").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_cli_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const SAMPLE: &str = "\
# small sample
11a1 0 -1 1 -10 -20
14a1 1 0 1 4 -6
19a1 0 1 1 -9 -15
37a1 0 0 1 -1 0
1302x 1 0 1 354 4684
0 0 1 -7 6
bad 1 2 3
";

#[test]
fn gm_check_small_range() {
    let (code, out, _) = run(&["gm-check", "--max-order", "500"]);
    assert_eq!(code, 0);
    assert!(out.contains("divide 6"));
    assert_eq!(run(&["gm-check", "--max-order", "0"]).0, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["classify", "--coeffs", "1,2,3"]).0, 2);
    assert_eq!(run(&["classify", "--coeffs", "0,0,0,0,0"]).0, 2);
    assert_eq!(run(&["torsion", "--coeffs", "0,0,1,-1,0", "--d", "4"]).0, 2);
    assert_eq!(run(&["scan", "--input", "/nonexistent/x", "--output", "/tmp/y"]).0, 2);
}

#[test]
fn classify_reports_mu3_and_json() {
    let (code, out, _) = run(&["classify", "--coeffs", "1,0,1,4,-6"]);
    assert_eq!(code, 0);
    assert!(out.contains("semistable: true"));
    assert!(out.contains("E(Q)_tors: Z/6"));
    assert!(!out.contains("mu3 generator: none"));

    let (code, out, _) = run(&["classify", "--coeffs", "0,0,0,-1,0", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["semistable"], false);
}

#[test]
fn torsion_lists_points() {
    let (code, out, _) = run(&["torsion", "--coeffs", "0,-1,1,-10,-20"]);
    assert_eq!(code, 0);
    assert!(out.contains("E(Q)_tors: Z/5 (order 5)"));
    assert!(out.contains("E(Q(sqrt -3))_tors: Z/5"));
}

#[test]
fn verify_example_exit_code_tracks_checks() {
    let (code, out, _) = run(&["verify-example"]);
    let all_pass = !out.contains("[FAIL] (") || out.lines().filter(|l| l.starts_with("[FAIL]")).all(|l| l.contains("(iso-"));
    assert!(out.contains("(a)") && out.contains("(f)") && out.contains("(iso-q)"));
    assert_eq!(code == 0, out.contains("all stated facts hold"));
    assert_eq!(code == 0, all_pass);
}

fn scan_text(text: &str, format: &str) -> (i32, String) {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let output = dir.path().join("out");
    fs::write(&input, text).unwrap();
    let (code, _, _) = run(&[
        "scan",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--format",
        format,
    ]);
    (code, fs::read_to_string(output).unwrap())
}

#[test]
fn scan_formats_agree() {
    let (code, json) = scan_text(SAMPLE, "json");
    assert_eq!(code, 0);
    let batch: BatchResult = serde_json::from_str(&json).unwrap();
    assert_eq!(batch.summary.total, 7);
    assert_eq!(batch.summary.line_errors, 1);
    assert_eq!(batch.errors[0].line, 8);

    let (code, tsv) = scan_text(SAMPLE, "tsv");
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = tsv.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), batch.entries.len());
    for (row, e) in rows.iter().zip(&batch.entries) {
        assert_eq!(row[0], e.record.display_label());
        assert_eq!(row[4], e.report.mu3_present.to_string());
        assert_eq!(row[5], e.report.ar_points.len().to_string());
        assert_eq!(row[7], e.report.consistent().to_string());
    }
}

#[test]
fn scan_is_order_independent() {
    let (_, forward) = scan_text(SAMPLE, "json");
    let reversed: String = SAMPLE.lines().rev().map(|l| format!("{l}\n")).collect();
    let (_, backward) = scan_text(&reversed, "json");
    let f: BatchResult = serde_json::from_str(&forward).unwrap();
    let b: BatchResult = serde_json::from_str(&backward).unwrap();
    assert_eq!(f.summary, b.summary);
    for e in &f.entries {
        let twin = b.entries.iter().find(|x| x.record.coeffs == e.record.coeffs).unwrap();
        assert_eq!(twin.report, e.report);
    }
}
