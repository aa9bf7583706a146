use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helitwist")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_accepts_closed_triangulations() {
    for tri in ["doubled.tri", "folded.tri"] {
        let o = run(&["validate", "--triangulation", &fixture(tri)]);
        assert_eq!(o.status.code(), Some(0), "{tri}");
    }
    let o = run(&["validate", "--triangulation", &fixture("doubled.tri"), "--surface", &fixture("twist3.surf")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn validate_rejects_open_complex_and_mismatched_surface() {
    let o = run(&["validate", "--triangulation", &fixture("open.tri")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not closed"));

    let o = run(&["validate", "--triangulation", &fixture("doubled.tri"), "--surface", &fixture("mismatched.surf")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let o = run(&["validate", "--triangulation", &fixture("broken.tri")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("broken.tri"), "{err}");

    let o = run(&["validate", "--triangulation", &fixture("missing.tri")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["lemmas", "--suite", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--triangulation", &fixture("doubled.tri")]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));

    let o = run(&["classes", "--triangulation", &fixture("doubled.tri"), "--delta", "0,7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--delta"));
}

#[test]
fn analyze_reports_net_range() {
    let o = run(&[
        "analyze",
        "--triangulation",
        &fixture("doubled.tri"),
        "--surface",
        &fixture("twist3.surf"),
        "--delta",
        "0",
        "--report",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["netRange"], serde_json::json!([3, 3]));
    assert_eq!(v["totalAbsolute"], 6);
}

#[test]
fn compare_consistent_surfaces_have_equal_net_twisting() {
    let o = run(&[
        "compare",
        "--triangulation",
        &fixture("doubled.tri"),
        "--surface",
        &fixture("twist3.surf"),
        "--surface",
        &fixture("twist1.surf"),
        "--delta",
        "0,1",
        "--report",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["signature"].is_null());
    assert_eq!(v["net"], serde_json::json!([0, 0]));
}

#[test]
fn compare_detects_opposite_hands() {
    let o = run(&[
        "compare",
        "--triangulation",
        &fixture("doubled.tri"),
        "--surface",
        &fixture("twist3.surf"),
        "--surface",
        &fixture("twist-2.surf"),
        "--delta",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not consistent"));
}

#[test]
fn compare_needs_two_surfaces() {
    let o = run(&["compare", "--triangulation", &fixture("doubled.tri"), "--surface", &fixture("twist3.surf")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classes_grow_with_the_twist_bound() {
    let o = run(&["classes", "--triangulation", &fixture("folded.tri"), "--delta", "1", "--max-twist", "4", "--report", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["perDeltaTetFactor"], 6);
    let counts: Vec<u64> = v["counts"].as_array().unwrap().iter().map(|c| c["classes"].as_u64().unwrap()).collect();
    assert_eq!(counts.len(), 5);
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn numturns_suite_passes_and_dumps_nothing() {
    let dir = std::env::temp_dir().join(format!("helitwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dump = dir.join("dump.txt");
    let o = run(&["lemmas", "--suite", "numturns", "--max-twist", "8", "--dump", dump.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("numturns: PASS"));
    assert_eq!(std::fs::read_to_string(&dump).unwrap(), "");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["lemmas", "--suite", "mainlemma", "--max-twist", "3", "--report", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
