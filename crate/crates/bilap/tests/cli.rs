//! End-to-end runs of the binary: documented examples, exit codes, file layout,
//! reproducibility and configuration files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bilap(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bilap")).args(args).current_dir(dir).output().expect("binary runs")
}

/// Data rows of a check CSV (timestamp line and header stripped).
fn rows(path: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap();
    let (stamp, body) = text.split_once('\n').unwrap();
    assert!(stamp.starts_with("# bilap "));
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["check", "param1", "param2", "lhs", "rhs", "margin", "holds", "paper_ref"]);
    reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn roots_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = bilap(&["roots", "--n", "20", "--out", "roots.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = rows(&dir.path().join("roots.csv"));
    assert_eq!(r.len(), 20);
    for row in &r {
        let residual: f64 = row[3].parse().unwrap();
        assert!(residual < 1e-9);
        assert_eq!(row[6], "true");
    }
    assert!(dir.path().join("roots.proposition.csv").exists());
    assert!(dir.path().join("roots.gamma.csv").exists());
}

#[test]
fn riesz_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = bilap(&["riesz1d", "--pair", "0,2", "--z", "1e2:1e8:64log", "--out", "r.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&dir.path().join("r.csv"));
    assert_eq!(r.len(), 64);
    assert!(r.iter().all(|row| row[6] == "true"));
}

#[test]
fn compare_example_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["compare", "--domain", "square:1", "--grids", "32,64,128", "--k", "10", "--cache", "cache", "--format", "json"];
    let first = bilap(&[&args[..], &["--out", "a.json"]].concat(), dir.path());
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let second = bilap(&[&args[..], &["--out", "b.json"]].concat(), dir.path());
    assert_eq!(second.status.code(), Some(0));
    let hits = |name: &str| -> Vec<bool> {
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
        v["report"]["timing"]["solves"].as_array().unwrap().iter().map(|s| s["cache_hit"].as_bool().unwrap()).collect()
    };
    assert_eq!(hits("a.json"), vec![false; 3]);
    assert_eq!(hits("b.json"), vec![true; 3]);
    assert_eq!(fs::read_dir(dir.path().join("cache")).unwrap().count(), 3);
}

#[test]
fn failing_asserted_check_exits_one() {
    // the Kröger–Laptev average bound is a Neumann-type statement; clamped beams violate it
    let dir = tempfile::tempdir().unwrap();
    let out = bilap(&["kroeger-laptev", "--pair", "0,1", "--k", "5", "--n", "10", "--out", "kl.csv"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let r = rows(&dir.path().join("kl.csv"));
    assert!(r.iter().any(|row| row[0] == "kroeger_laptev.s_k" && row[6] == "false"));
}

#[test]
fn reported_only_failures_do_not_change_exit_code() {
    // the odd-n lower bracket is violated at n = 1 but only recorded
    let dir = tempfile::tempdir().unwrap();
    let out = bilap(&["roots", "--n", "3", "--out", "r.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let p = rows(&dir.path().join("r.proposition.csv"));
    assert!(p.iter().any(|row| row[0] == "roots.lower_odd" && row[1] == "1" && row[6] == "false"));
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 8] = [
        &["roots", "--domain", "disk:1"],
        &["riesz1d", "--pair", "2,1"],
        &["riesz1d", "--z", "0:1:4log"],
        &["compare", "--grids", "64,32"],
        &["eig2d", "--bc", "neumann"],
        &["roots", "--seedless=1"],
        &["frobnicate"],
        &[],
    ];
    for args in cases {
        let out = bilap(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    assert_eq!(bilap(&["roots", "--n", "2", "--seedless", "--out", "x.csv"], dir.path()).status.code(), Some(0));
}

#[test]
fn reruns_are_byte_identical_after_the_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let out = bilap(&["constants", "--dims", "2:4", "--out", name], dir.path());
        assert_eq!(out.status.code(), Some(0));
    }
    let body = |p: &str| {
        let t = fs::read_to_string(dir.path().join(p)).unwrap();
        t.split_once('\n').unwrap().1.to_string()
    };
    assert_eq!(body("a.csv"), body("b.csv"));
    assert_eq!(body("a.dimensional.csv"), body("b.dimensional.csv"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("cfg.json"), r#"{"command": "lemma-onedim", "r": "0:50:11lin", "out": "from_file.csv"}"#).unwrap();
    let out = bilap(&["--config", "cfg.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(rows(&dir.path().join("from_file.csv")).len(), 44);
    let out = bilap(&["--config", "cfg.json", "--out", "flag.csv", "--r", "1,2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(rows(&dir.path().join("flag.csv")).len(), 8);
    fs::write(dir.path().join("bad.json"), r#"{"command": "roots", "colour": "red"}"#).unwrap();
    assert_eq!(bilap(&["--config", "bad.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn json_report_layout() {
    let dir = tempfile::tempdir().unwrap();
    let out = bilap(&["spectrum1d", "--pair", "0,1", "--k", "5", "--format", "json", "--out", "s.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    let rep = &v["report"];
    assert_eq!(rep["command"], "spectrum1d");
    assert!(rep["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
    let table = &rep["tables"][0];
    assert_eq!(table["rows"].as_array().unwrap().len(), 5);
    let first = table["rows"][0][3].as_f64().unwrap();
    assert!((first - 500.563_901_740_432_6).abs() < 1e-9);
    assert!(rep["timing"]["total_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn predict_and_avp_on_an_interval() {
    let dir = tempfile::tempdir().unwrap();
    let out = bilap(&["predict", "--domain", "rect:2x1", "--bc", "navier", "--a", "0.3", "--k", "1:20", "--out", "p.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = bilap(&["avp", "--domain", "interval:1", "--k", "1:40", "--out", "a.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("a.heat.csv").exists() && dir.path().join("a.individual.csv").exists());
}
