use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn winternitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_winternitz"))
        .args(args)
        .env_remove("WINTERNITZ_SEED")
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn cut_echoes_canonical_labels() {
    let v = json_stdout(&winternitz(&["cut", "--sides", "4,5,3"]));
    assert_eq!(v["sides"]["a"], 5.0);
    assert_eq!(v["sides"]["b"], 4.0);
    assert_eq!(v["sides"]["c"], 3.0);
    assert_eq!(v["sides"]["input_order"], serde_json::json!([1, 0, 2]));
    assert_eq!(v["achieving_vertex"], "A");
    assert!(v["oracle"]["abs_diff"].as_f64().unwrap() < 1e-9);
    assert!(v.get("discrepancy").is_none());
}

#[test]
fn cut_at_point_outside_fails_with_json_error() {
    let out = winternitz(&["cut", "--sides", "3,4,5", "--point", "10,10"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "NotInterior");
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(winternitz(&["cut", "--sides", "a,b,c"]).status.code(), Some(2));
    assert_eq!(winternitz(&["scan"]).status.code(), Some(2));
}

#[test]
fn numbers_have_at_most_12_significant_digits() {
    let out = winternitz(&["cut", "--sides", "8,8,1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.294117647059"), "{text}");
    assert!(!text.contains("0.2941176470588"));
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let v = json_stdout(&winternitz(&[
        "sweep",
        "--sides",
        "3,4,5",
        "--samples",
        "720",
        "--out",
        path.to_str().unwrap(),
    ]));
    let csv = fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta,piece_min_fraction"));
    // uniform samples plus the three vertex breakpoints
    assert_eq!(lines.count(), 723);
    let m = v["min_fraction"].as_f64().unwrap();
    assert!((v["range"][1].as_f64().unwrap() - (1.0 - m)).abs() < 1e-11);
}

#[test]
fn area_sweep_hits_four_ninths() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("area.csv");
    let v = json_stdout(&winternitz(&["sweep", "--sides", "2,3,4", "--area", "--out", path.to_str().unwrap()]));
    assert!((v["min_fraction"].as_f64().unwrap() - 4.0 / 9.0).abs() < 1e-9);
}

#[test]
fn scan_is_reproducible_and_seeded_by_env() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.csv");
    let p2 = dir.path().join("b.csv");
    let s1 = json_stdout(&winternitz(&["scan", "--resolution", "80", "--out", p1.to_str().unwrap()]));
    let out = Command::new(env!("CARGO_BIN_EXE_winternitz"))
        .args(["scan", "--resolution", "80", "--out", p2.to_str().unwrap()])
        .env("WINTERNITZ_SEED", "7")
        .output()
        .unwrap();
    let s2 = json_stdout(&out);
    assert_eq!(fs::read(&p1).unwrap(), fs::read(&p2).unwrap());
    assert_eq!(s1["seed"], 0);
    assert_eq!(s2["seed"], 7);
    assert!(fs::read_to_string(&p1).unwrap().starts_with("c,b,a,F,branch,flag\n"));
    assert!(s1["min_point"]["f"].as_f64().unwrap() < 0.3);
}

#[test]
fn polygon_and_neumann_on_a_square() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    fs::write(&path, r#"{"vertices": [[0,0],[0,2],[2,2],[2,0]]}"#).unwrap();
    let f = path.to_str().unwrap();
    let v = json_stdout(&winternitz(&["polygon", "--file", f]));
    assert!((v["min_fraction"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(v["symmetry_center"]["x"], 1.0);
    let v = json_stdout(&winternitz(&["neumann", "--file", f, "--starts", "5"]));
    assert!((v["result"]["value"].as_f64().unwrap() - 0.5).abs() < 1e-6);
}

#[test]
fn polygon_rejects_nonconvex_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dart.json");
    fs::write(&path, r#"{"vertices": [[0,0],[4,0],[1,1],[0,4]]}"#).unwrap();
    let out = winternitz(&["polygon", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "NotConvex");
}

#[test]
fn quick_verify_reports_discrepancies_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = winternitz(&["verify", "--quick", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("DISCREPANCIES (3)"), "{table}");
    assert!(!table.lines().any(|l| l.starts_with("FAIL")));
    let report: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["quick"], true);
    assert_eq!(report["scan_resolution"], 100);
}
