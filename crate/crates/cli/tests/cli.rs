//! End-to-end runs of the `cohdiff` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cohdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohdiff"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("the binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce_prints_the_normal_form() {
    let o = cohdiff(&["reduce", "examples/beta.cdl"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "#3\n");
    let o = cohdiff(&["reduce", "--trace", "examples/derivative.cdl"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().starts_with("--> #3"));
}

#[test]
fn reduce_reports_running_out_of_fuel() {
    let o = cohdiff(&["reduce", "--fuel", "3", "examples/countdown.cdl"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no normal form within 3 steps"));
}

#[test]
fn typecheck_accepts_and_rejects() {
    let o = cohdiff(&["typecheck", "examples/open.cdl"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "f : i -> i |- D f : i1 -> i1\n");
    let o = cohdiff(&["typecheck", "examples/ill_typed.cdl"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("type error (sum)"));
}

#[test]
fn eval_prints_the_relation_and_checks_soundness() {
    let o = cohdiff(&["eval", "--sound", "examples/derivative.cdl"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "3"), "{out}");
    assert!(out.contains("0 violations"));
}

#[test]
fn derive_computes_the_derivative_of_a_relation_file() {
    let o = cohdiff(&["derive", "examples/square.rel", "--spaces", "examples/flat.space"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[0·a,0·a] ↦ 0·b"));
    assert!(out.contains("[1·a] ↦ 1·a"));
    assert!(!out.contains("[0·a,1·a]"));
}

#[test]
fn demo_taylor_shows_the_contrast() {
    let o = cohdiff(&["demo", "taylor"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[0·a,1·a] ↦ 1·b"));
    assert!(out.contains("vanishes in COH whereas it does not in NUCS"));
}

#[test]
fn check_laws_is_deterministic_and_writes_a_summary() {
    let dir = std::env::temp_dir().join(format!("cohdiff-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let summary = |i: u32| -> PathBuf { dir.join(format!("summary{i}.json")) };
    let run = |i: u32| {
        cohdiff(&[
            "check-laws",
            "--model",
            "nucs",
            "--seed",
            "1",
            "--trials",
            "3",
            "--summary",
            summary(i).to_str().unwrap(),
        ])
    };
    let (a, b) = (run(1), run(2));
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let (s1, s2) = (std::fs::read(summary(1)).unwrap(), std::fs::read(summary(2)).unwrap());
    assert_eq!(s1, s2);
    let json: serde_json::Value = serde_json::from_slice(&s1).unwrap();
    assert_eq!(json["passed"], serde_json::Value::Bool(true));
    assert!(json["reports"].as_array().unwrap().len() > 20);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_laws_only_selects_one_family() {
    let o = cohdiff(&["check-laws", "--model", "coh", "--trials", "2", "--only", "d-chain"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 1);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(cohdiff(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cohdiff(&["reduce", "examples/missing.cdl"]).status.code(), Some(2));
    assert_eq!(cohdiff(&["check-laws", "--model", "coh", "--only", "no-such-law"]).status.code(), Some(2));
    assert_eq!(cohdiff(&["check-laws", "--model", "vector"]).status.code(), Some(2));
}
