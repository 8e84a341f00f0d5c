use std::fs;
use std::process::{Command, Output};

use ellipmean::approximations::ApproxId;
use ellipmean::special_fn::Modulus;
use ellipmean::verify::{Catalog, Level};
use ellipmean_cli::verify_with;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellipmean"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_reports_values_and_errors() {
    let o = bin(&["eval", "--r", "0", "--target", "E"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("E r=0 value={}\n", std::f64::consts::FRAC_PI_2));

    let o = bin(&["eval", "--r", "1", "--target", "A5"]);
    let line = stdout(&o);
    let err: f64 = line.trim().rsplit("error=").next().unwrap().parse().unwrap();
    assert!((err + (2.0 / std::f64::consts::PI - 7.0 / 11.0)).abs() < 1e-15, "{line}");

    // AGM oracle at r = 0.5
    let o = bin(&["eval", "--r", "0.5", "--target", "E"]);
    let v: f64 = stdout(&o).trim().rsplit("value=").next().unwrap().parse().unwrap();
    let agm = ellipmean::special_fn::ellip_e_agm(&Modulus::new(0.5).unwrap());
    assert!((v - agm).abs() < 1e-14);
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["eval", "--r", "1.5", "--target", "E"]).status.code(), Some(2));
    assert_eq!(bin(&["eval", "--r", "0.5", "--target", "s_family(3)"]).status.code(), Some(2));
    assert_eq!(bin(&["eval", "--r", "0.5"]).status.code(), Some(2));
    assert_eq!(bin(&["table", "--grid", "1", "--ids", "A1", "--out", "x.csv"]).status.code(), Some(2));
    assert_eq!(bin(&["conjecture", "--grid", "50", "--out", "x.csv"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("t.csv");
    let o = bin(&["table", "--grid", "3", "--ids", "A1", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn table_is_deterministic_and_summarised() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = bin(&["table", "--grid", "2", "--ids", "A1", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,rprime,two_over_pi_E,A1_value,A1_error");
    let data = lines.iter().filter(|l| l.starts_with("0.")).count();
    assert_eq!(data, 2);
    assert!(!text.contains('\r'));

    let c = dir.path().join("c.csv");
    bin(&["table", "--grid", "50", "--ids", "A5,A8", "--out", c.to_str().unwrap()]);
    let text = fs::read_to_string(&c).unwrap();
    let row = text.lines().find(|l| l.starts_with("max_abs_error")).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    let a5: f64 = cells[4].parse().unwrap();
    let a8: f64 = cells[6].parse().unwrap();
    let two_pi = 2.0 / std::f64::consts::PI;
    assert!((a5 - (two_pi - 7.0 / 11.0)).abs() < 1e-9);
    assert!((a8 - (0.64 - two_pi)).abs() < 1e-9);
}

#[test]
fn scan_p_classifies_the_corollary_cases() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = bin(&[
        "scan-p", "--lo", "1.75", "--hi", "2", "--steps", "2", "--grid", "400", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(&rows[0][..4], &["1.75", "increasing", "increasing", "true"]);
    assert_eq!(rows[0][5], "positive");
    assert_eq!(&rows[1][..4], &["2", "decreasing", "decreasing", "true"]);
    assert_eq!(rows[1][5], "negative");

    let o = bin(&["scan-p", "--lo", "1.9", "--hi", "1.9", "--steps", "1", "--grid", "100", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&out).unwrap().lines().nth(1).unwrap().contains("unclassified"));

    let o = bin(&["scan-p", "--lo", "0", "--hi", "2.5", "--steps", "2", "--grid", "100", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn conjecture_reports_p0_and_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.csv");
    let o = bin(&["conjecture", "--grid", "400", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let p0: f64 = text.lines().next().unwrap().trim_start_matches("p0 = ").parse().unwrap();
    assert!((p0 - 1.763135).abs() < 1e-5);
    assert!(text.contains("single peak"), "{text}");
    assert!(text.contains("holds at all 400 grid points"), "{text}");
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 401);
}

struct Corrupted;

impl Catalog for Corrupted {
    fn table_max_error(&self, id: ApproxId) -> (f64, bool) {
        let (v, exact) = ellipmean::approximations::table_max_error(id);
        if id == ApproxId::A8 {
            (v * 1.01, exact)
        } else {
            (v, exact)
        }
    }
}

#[test]
fn verify_names_the_broken_check() {
    let mut buf = Vec::new();
    let err = verify_with(Level::Fast, &Corrupted, &mut buf).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    let text = String::from_utf8(buf).unwrap();
    let ac2 = text.lines().find(|l| l.contains(" AC2:")).unwrap();
    assert!(ac2.starts_with("FAIL") && ac2.contains("A8"), "{ac2}");
    assert!(err.to_string().contains("AC2"));
}

#[test]
fn verify_fast_runs_every_named_check() {
    let o = bin(&["verify", "--level", "fast"]);
    let text = stdout(&o);
    for i in 1..=10 {
        assert!(text.lines().any(|l| l.contains(&format!(" AC{i}:"))), "AC{i} missing");
    }
    assert!(text.lines().any(|l| l.starts_with("PASS g6_at_7")));
    // the tabulated A4 coefficient does not match the series, so AC3 fails
    assert!(text.lines().any(|l| l.starts_with("FAIL AC3") && l.contains("A4")));
    assert_eq!(o.status.code(), Some(1));
}
