use std::process::{Command, Output};

use parastacks_core::walks::quarter_loop_series;
use parastacks_core::{IntPolynomial, SeriesReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parastacks"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn sortable_prints_canonical_word() {
    let o = run(&["sortable", "3", "1", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "yes\nENEWWS\n");
    let o = run(&["sortable", "4123"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "no\n");
}

#[test]
fn execute_and_canonicalize_agree() {
    assert_eq!(stdout(&run(&["execute", "ENEWWS"])), "3 1 2\n");
    assert_eq!(stdout(&run(&["execute", "I1", "I2", "O1", "O2"])), "1 2\n");
    // the non-eager word ENWS produces 1 2 as well
    let o = run(&["canonicalize", "ENWS"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "EWEW\n");
}

#[test]
fn series_s_json() {
    let o = run(&["series", "s", "--n", "8", "--format", "json", "--no-timing"]);
    assert!(o.status.success());
    let r = SeriesReport::from_json_str(&stdout(&o)).unwrap();
    let s = r.to_series::<num_bigint::BigInt>().unwrap();
    let want = [1, 1, 2, 6, 23, 103, 513, 2760, 15741];
    for (k, w) in want.iter().enumerate() {
        assert_eq!(s.coeff(k), &num_bigint::BigInt::from(*w));
    }
}

#[test]
fn verified_series_report_passed_check() {
    for which in ["s", "sprim", "stilde", "c", "q", "qprim", "w00", "h00"] {
        let o = run(&["series", which, "--n", "5", "--verify", "--brute-bound", "5", "--format", "json"]);
        assert!(o.status.success(), "{which}: {}", String::from_utf8_lossy(&o.stderr));
        let r = SeriesReport::from_json_str(&stdout(&o)).unwrap();
        assert_eq!(r.provenance.oracle_check, parastacks_core::report::CheckStatus::Passed);
        assert!(r.timing_ms.is_some());
    }
    let o = run(&["series", "q", "--n", "4", "--refine-s", "--verify", "--format", "json"]);
    assert!(o.status.success());
}

#[test]
fn loop_series_round_trips() {
    let o = run(&["series", "q", "--n", "10", "--format", "json", "--no-timing"]);
    let r = SeriesReport::from_json_str(&stdout(&o)).unwrap();
    assert_eq!(r.to_series::<IntPolynomial>().unwrap(), quarter_loop_series(10));
}

#[test]
fn output_is_deterministic() {
    for fmt in ["json", "csv", "text"] {
        let args = ["series", "qprim", "--n", "7", "--refine-s", "--no-timing", "--format", fmt];
        assert_eq!(run(&args).stdout, run(&args).stdout, "{fmt}");
    }
    let a = ["estimate", "radius", "--grid", "-1,1/2", "--orders", "10", "--format", "csv", "--jobs", "2"];
    assert_eq!(run(&a).stdout, run(&a).stdout);
}

#[test]
fn evaluation_at_rational_a() {
    let o = run(&["series", "q", "--n", "3", "--at", "1/2"]);
    assert_eq!(stdout(&o), "u^0: 1\nu^1: 2\nu^2: 9\nu^3: 113/2\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["series", "q", "--at", "0.5"][..],
        &["series", "s", "--at", "1/2"],
        &["frobnicate"],
        &["series", "zeta"],
        &["execute", "ENX"],
        &["oracle", "perms", "--n", "12", "--brute-bound", "9"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn contract_violations_exit_1() {
    let o = run(&["canonical", "4", "1", "2", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not achievable"));
}

#[test]
fn oracle_perms_matches_series() {
    let o = run(&["oracle", "perms", "--n", "6", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,count\n0,1\n1,1\n2,2\n3,6\n4,23\n5,103\n6,513\n");
}

#[test]
fn checks_pass() {
    for args in [
        &["check", "counterexamples"][..],
        &["check", "inversion", "--n", "6"],
        &["check", "appendixB", "--n", "10"],
        &["check", "p1", "--i-max", "2", "--j-max", "2"],
        &["check", "p2", "--n", "5", "--j-max", "2"],
        &["check", "constant-term", "--n", "5"],
        &["check", "positivity", "--series", "h00", "--n", "5"],
    ] {
        let o = run(args);
        assert!(o.status.success(), "{args:?}");
        assert!(stdout(&o).contains("PASS") && !stdout(&o).contains("FAIL"), "{args:?}");
    }
}

#[test]
fn tc_bracket_json() {
    let o = run(&["estimate", "tc", "--n", "40", "--format", "json", "--no-timing"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lo = v["a_low"].as_f64().unwrap();
    let hi = v["a_high"].as_f64().unwrap();
    assert!(lo <= -0.15 && -0.148 <= hi);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn csv_floats_have_seventeen_digits() {
    let o = run(&["estimate", "radius", "--grid", "1", "--orders", "10", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,n,ratio,exponent_proxy,conjectured_radius"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "1.0000000000000000");
    assert_eq!(row[4], "0.062500000000000000");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("parastacks-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.csv");
    let o = run(&["series", "q", "--n", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, "u,a,coefficient\n0,0,1\n1,0,2\n2,0,8\n2,1,2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn involution_swaps_corner_counts() {
    let o = run(&["involution", "ENWNSWS", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nw"], v["image_wn"]);
    assert_eq!(v["wn"], v["image_nw"]);
}
