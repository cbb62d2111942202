use std::io::Write;
use std::process::{Command, Output};

use brimlab::report::Report;

const E4: &str = "ring { p = 101 vars = [x, y] ideal = [x^2, x*y] } module { rank = 2 matrix = [[y, 0], [0, y]] }";
const E5: &str =
    "ring { p = 101 vars = [x, y] } module { rank = 2 matrix = [[x, y, 0], [0, x, y]] }";

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn brimlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brimlab"))
        .args(args)
        .output()
        .unwrap()
}

fn with_file(text: &str, args: &[&str]) -> Output {
    let f = spec_file(text);
    let mut all: Vec<&str> = args.to_vec();
    all.insert(1, f.path().to_str().unwrap());
    brimlab(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_json_carries_lengths_and_round_trips() {
    let out = with_file(E4, &["analyze", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: Report = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        (
            report.lengths.f_mod_n,
            report.lengths.a_mod_in,
            report.multiplicity.e0
        ),
        (4, 3, 2)
    );
    assert_eq!(report.multiplicity.coefficients, vec![2, -1, 1]);
    let again: Report =
        serde_json::from_str(&report.render(brimlab::report::Format::Json)).unwrap();
    assert_eq!(again, report);
}

#[test]
fn analyze_csv_has_header_and_one_row() {
    let out = with_file(E5, &["analyze", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], Report::CSV_HEADER);
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
}

#[test]
fn text_report_names_the_multiplicity() {
    let out = with_file(E5, &["analyze"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("e(F/N)    3"), "{}", stdout(&out));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let out = with_file(
        "ring { p = 101 vars = [x] } module { rank = 1 matrix = [[q]] }",
        &["analyze"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1, column"), "{}", stderr(&out));
}

#[test]
fn zero_dimensional_ring_is_an_input_error() {
    let out = with_file(
        "ring { p = 101 vars = [x] ideal = [x] } module { rank = 1 matrix = [[x]] }",
        &["analyze"],
    );
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = brimlab(&["analyze", "/nonexistent/brimlab.spec"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_t_range_is_an_input_error() {
    let out = with_file(E5, &["analyze", "--t-range", "0..9"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn exhausted_budget_exits_3() {
    let out = with_file(E5, &["analyze", "--budget-pairs", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let out = with_file(E5, &["analyze", "--budget-degree", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn verify_passes_on_a_good_file_and_the_corpus() {
    let out = with_file(E4, &["verify"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}{}",
        stdout(&out),
        stderr(&out)
    );
    let out = brimlab(&["verify", "--corpus"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn sign_flip_makes_verify_fail() {
    let out = brimlab(&["verify", "--corpus", "--inject-sign-flip"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("complexes_ok"), "{}", stdout(&out));
}

#[test]
fn tampered_expectation_makes_corpus_fail() {
    assert_eq!(brimlab(&["corpus"]).status.code(), Some(0));
    for field in [
        "d",
        "F_mod_N",
        "A_mod_IN",
        "e0",
        "coefficients",
        "H_lengths",
    ] {
        let out = brimlab(&["corpus", "--tamper", &format!("E4.{field}")]);
        assert_eq!(out.status.code(), Some(1), "{field}");
    }
    let out = brimlab(&["corpus", "--tamper", "E4.nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corpus_filter_selects_by_prefix() {
    let out = brimlab(&["corpus", "--filter", "E1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 2, "{}", stdout(&out));
}

#[test]
fn spread_is_reproducible_from_the_seed() {
    let ring = "ring { p = 101 vars = [x, y] ideal = [x^2, x*y] } module { rank = 2 }";
    let args = [
        "spread",
        "--samples",
        "6",
        "--seed",
        "11",
        "--format",
        "json",
    ];
    let a = with_file(ring, &args);
    let b = with_file(ring, &args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["samples"].as_array().unwrap().len(), 6);
}

#[test]
fn complex_prints_sparse_triplets() {
    let out = with_file(E5, &["complex", "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# brimlab differentials"), "{text}");
    for line in text.lines().skip(1) {
        assert_eq!(line.split('\t').count(), 4, "{line}");
    }
}

#[test]
fn shipped_spec_files_run() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/specs");
    for (file, cmd) in [
        ("rank2_on_curve.spec", "verify"),
        ("plane_rank2.spec", "analyze"),
        ("cone_spread.spec", "spread"),
    ] {
        let path = format!("{dir}/{file}");
        let out = brimlab(&[cmd, &path]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", stderr(&out));
    }
}
