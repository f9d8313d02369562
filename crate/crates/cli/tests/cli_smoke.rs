//! End-to-end runs of the binary.

use std::process::{Command, Output};

fn graphcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphcx")).args(args).env_remove("GRAPHCX_CACHE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cohomology_of_gc2_at_three_loops_as_json() {
    let o = graphcx(&["cohomology", "--complex", "GC", "--d", "2", "--g", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["dims"], serde_json::json!({"0": 1}));
    assert_eq!(v["complex"], "GC");
}

#[test]
fn verify_d2_passes_on_the_four_edge_complex() {
    let o = graphcx(&["verify-d2", "--complex", "rdGC4edge", "--d", "2", "--g", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
}

#[test]
fn compare_gc2_with_oriented_trivalent_quotient() {
    let o = graphcx(&["compare", "--a", "GC:d=2", "--b", "oGC3:d=3", "--g", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: equal"));
}

#[test]
fn compare_reports_differences_with_exit_one() {
    let o = graphcx(&["compare", "--a", "GC:d=2", "--b", "GC:d=3", "--g", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"verdict\":\"differ\""));
}

#[test]
fn verify_map_and_basis_and_delta() {
    let o = graphcx(&["verify-map", "z", "--complex", "rdGC4edge", "--d", "3", "--g", "1-2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = graphcx(&["basis", "--complex", "GC:d=2", "--g", "3", "--deg", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("#complex=GC;d=2;g=3;deg=0;count=1\n"));
    let o = graphcx(&["delta", "--complex", "GC", "--d", "2", "--g", "3", "--deg", "-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["rank"], 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(graphcx(&["cohomology", "--complex", "nope", "--d", "2", "--g", "3"]).status.code(), Some(2));
    assert_eq!(graphcx(&["cohomology", "--complex", "GC", "--g", "3"]).status.code(), Some(2));
    assert_eq!(
        graphcx(&["cohomology", "--complex", "GC", "--d", "2", "--g", "3", "--field", "Fp:6"]).status.code(),
        Some(2)
    );
    assert_eq!(graphcx(&["verify-map", "f", "--complex", "dGC", "--d", "2", "--g", "2"]).status.code(), Some(2));
    assert_eq!(graphcx(&["theorems", "--only", "14"]).status.code(), Some(2));
    assert_eq!(graphcx(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_three() {
    let o = graphcx(&["basis", "--complex", "dGC", "--d", "2", "--g", "3", "--budget", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_str(String::from_utf8(o.stderr).unwrap().trim()).unwrap();
    assert_eq!(err["error"]["kind"], "budget");
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let run = |t: &str| stdout(&graphcx(&["cohomology", "--complex", "STGC", "--d", "3", "--g", "3", "--threads", t]));
    assert_eq!(run("1"), run("4"));
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_graphcx"))
        .args(["cohomology", "--complex", "GC", "--d", "2", "--g", "3"])
        .env("GRAPHCX_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("table").is_dir());
}
