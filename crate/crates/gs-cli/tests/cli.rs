//! End-to-end checks of the `gsreal` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn gsreal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsreal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_graph(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const SPHERE: &str = "gsgraph v1\nvertex 0 R r\nvertex 1 R a\nedge 0 1 1\n";

const WHITNEY_BIFURCATION: &str = "gsgraph v1
vertex 0 D r
vertex 1 W s_s
vertex 2 R a
vertex 3 W a
edge 0 1 3
edge 1 2 1
edge 1 3 2
";

#[test]
fn enumerate_weight_four_lists_four_forms() {
    let o = gsreal(&["enumerate", "--weight", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| !l.starts_with("count")).count(), 4);
    assert!(out.ends_with("count 4\n"));
}

#[test]
fn enumerate_above_the_cap_is_a_usage_error() {
    let o = gsreal(&["enumerate", "--weight", "9"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("GS_ENUM_BOUND"));
}

#[test]
fn catalog_prints_totals() {
    let o = gsreal(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("3 3 3 13 11 / 33"));
    let t = gsreal(&["catalog", "--type", "T"]);
    assert_eq!(stdout(&t).lines().filter(|l| l.starts_with("T_")).count(), 11);
}

#[test]
fn gen_random_is_deterministic_and_valid() {
    let a = gsreal(&["gen-random", "--seed", "7", "--minimal"]);
    let b = gsreal(&["gen-random", "--seed", "7", "--minimal"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let path = write_graph("gen7.gs", &stdout(&a));
    assert_eq!(gsreal(&["validate", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn realize_exit_codes() {
    let sphere = write_graph("sphere.gs", SPHERE);
    let o = gsreal(&["realize", sphere.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status realizable"));
    assert!(stdout(&o).contains("theorem Thm6"));

    let nr = write_graph("whitney.gs", WHITNEY_BIFURCATION);
    let nr = nr.to_str().unwrap();
    assert_eq!(gsreal(&["realize", nr]).status.code(), Some(2));
    let o = gsreal(&["realize", nr, "--search-bound", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("status not-realizable"));
    assert_eq!(gsreal(&["realize", nr, "--search-bound", "99"]).status.code(), Some(64));
}

#[test]
fn input_errors_have_distinct_codes() {
    let bad = write_graph("bad.gs", "gsgraph v1\nvertex 0 Q a\n");
    let o = gsreal(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"));
    assert_eq!(gsreal(&["validate", "/nonexistent/graph.gs"]).status.code(), Some(64));
    assert_eq!(gsreal(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn euler_and_dot_outputs() {
    let sphere = write_graph("sphere2.gs", SPHERE);
    let o = gsreal(&["euler", sphere.to_str().unwrap()]);
    assert_eq!(stdout(&o), "euler-conley 2\neuler-gs 2\nfold-balance true\n");
    let dot = stdout(&gsreal(&["export-dot", sphere.to_str().unwrap()]));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 1);
}
