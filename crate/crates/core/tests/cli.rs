use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn laqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laqc"))
        .args(args)
        .output()
        .expect("run laqc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn h(c: f64) -> f64 {
    let f = |p: f64| if p > 0.0 { p * (2.0 * p).log2() } else { 0.0 };
    f((1.0 + c) / 2.0) + f((1.0 - c) / 2.0)
}

fn csv_rows(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().unwrap().clone();
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            headers.iter().map(String::from).zip(rec.iter().map(String::from)).collect()
        })
        .collect()
}

#[test]
fn compute_zero() {
    let o = laqc(&["compute", "0", "0", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["C"], "0");
    assert_eq!(rows[0]["L"], "0");
    assert_eq!(rows[0]["physical"], "true");
}

#[test]
fn compute_unphysical() {
    let o = laqc(&["compute", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("(1−c1−c2−c3)/4 = -0.5"), "{err}");
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0]["physical"], "false");
    assert_eq!(rows[0]["C"], "");
}

#[test]
fn compute_numeric_sample_state() {
    let o = laqc(&["compute", "0.1", "0.2", "0.6", "--numeric", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let row = &json(&o)["rows"][0];
    assert!((row["C"].as_f64().unwrap() - 0.007226).abs() < 5e-7);
    assert!((row["L"].as_f64().unwrap() - 0.278072).abs() < 5e-7);
    assert!(row["delta_C"].as_f64().unwrap() < 1e-6);
    assert!(row["delta_L"].as_f64().unwrap() < 1e-6);
    assert_eq!(row["case_C"], "II");
}

#[test]
fn json_and_csv_agree_to_printed_precision() {
    let c = csv_rows(&stdout(&laqc(&["compute", "-0.2", "0.3", "-0.4"])));
    let j = json(&laqc(&["compute", "-0.2", "0.3", "-0.4", "--format", "json"]));
    for key in ["lambda1", "lambda2", "lambda3", "lambda4", "c_m", "c_M", "C", "L"] {
        let from_csv: f64 = c[0][key].parse().unwrap();
        let from_json = j["rows"][0][key].as_f64().unwrap();
        assert!((from_csv - from_json).abs() <= 1e-11 * from_json.abs().max(1e-300), "{key}");
    }
    assert_eq!(j["meta"]["grid"]["theta_steps"], 256);
}

#[test]
fn output_is_deterministic() {
    let args = ["oracle-compare", "--count", "3", "--seed", "9", "--grid", "16,16,1", "--phi-steps", "16"];
    let a = laqc(&args);
    let b = laqc(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = laqc(&["compute", "0.1", "0.2", "0.6", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"][0]["c3"], 0.6);
}

#[test]
fn werner_sweep_has_equal_quantifiers() {
    let o = laqc(&["sweep", "--axis", "werner_z", "--start", "0", "--stop", "1", "--steps", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 11);
    for (k, r) in rows.iter().enumerate() {
        let z = k as f64 / 10.0;
        let c: f64 = r["C"].parse().unwrap();
        let l: f64 = r["L"].parse().unwrap();
        assert_eq!(r["C"], r["L"]);
        assert!((c - h(z)).abs() < 1e-11 && (l - h(z)).abs() < 1e-11);
    }
}

#[test]
fn c3_sweep_single_axis_states() {
    let o = laqc(&["sweep", "--axis", "c3", "--start", "-1", "--stop", "1", "--steps", "9"]);
    assert_eq!(o.status.code(), Some(0));
    for r in csv_rows(&stdout(&o)) {
        let c3: f64 = r["c3"].parse().unwrap();
        assert_eq!(r["physical"], "true");
        assert_eq!(r["C"], "0");
        assert!((r["L"].parse::<f64>().unwrap() - h(c3.abs())).abs() < 1e-11);
    }
}

#[test]
fn c1_sweep_flags_unphysical_rows() {
    let o = laqc(&[
        "sweep", "--axis", "c1", "--start", "0", "--stop", "1", "--steps", "5", "--c2", "0.5", "--c3", "0.5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["physical"], "true");
    for r in &rows[1..] {
        assert_eq!(r["physical"], "false");
        assert_eq!(r["C"], "");
        assert!(r["reason"].contains("(1−c1−c2−c3)/4"));
    }
}

#[test]
fn sweep_rejects_bad_spec() {
    let o = laqc(&["sweep", "--axis", "c2", "--start", "0.5", "--stop", "0", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let o = laqc(&["sweep", "--axis", "c4", "--start", "0", "--stop", "1", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# c1 c2 c3\n0,0,0\n-1 -1 -1\n\n0.1, 0.2, 0.6").unwrap();
    let o = laqc(&["validate", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["summary"]["physical"], 3);
    assert_eq!(v["rows"][1]["line"], 3);

    writeln!(f, "1,1,1\n0.1,oops,0.2").unwrap();
    let o = laqc(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains(":7: malformed row"), "{err}");
    assert!(err.contains("unphysical=1"), "{err}");
    let rows = csv_rows(&stdout(&o));
    assert!(rows[3]["reason"].contains("(1−c1−c2−c3)/4"));
}

#[test]
fn validate_missing_file() {
    let o = laqc(&["validate", "/nonexistent/triples.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn oracle_compare_origin_only() {
    let o = laqc(&["oracle-compare", "--count", "1", "--include-origin", "--phi-steps", "16", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["summary"]["max_delta_C"], 0.0);
    assert_eq!(v["summary"]["max_delta_L"], 0.0);
    assert_eq!(v["meta"]["seed"], 0);
}

#[test]
fn oracle_compare_coarse_grid_fails_gate() {
    let o = laqc(&["oracle-compare", "--count", "10", "--grid", "8,8,0", "--phi-steps", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert!(v["summary"]["max_delta_C"].as_f64().unwrap() > 1e-6);
    assert_eq!(v["summary"]["pass"], false);
}

#[test]
fn usage_errors() {
    assert_eq!(laqc(&[]).status.code(), Some(2));
    assert_eq!(laqc(&["compute", "0", "0"]).status.code(), Some(2));
    assert_eq!(laqc(&["compute", "0", "0", "x"]).status.code(), Some(2));
    assert_eq!(laqc(&["compute", "0", "0", "0", "--grid", "8,8"]).status.code(), Some(2));
    assert_eq!(laqc(&["--version"]).status.code(), Some(0));
}
