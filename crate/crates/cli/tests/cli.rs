use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use lambda_eps::canonical::diff_eq;
use lambda_eps::syntax::parse;

fn leps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leps")).args(args).output().unwrap()
}

fn leps_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_leps"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_slice(&leps(&full).stdout).unwrap()
}

#[test]
fn canon_output_is_equivalent_to_input() {
    let src = "D(u) * (x + y + eps z)";
    let o = leps(&["canon", "-e", src]);
    assert_eq!(o.status.code(), Some(0));
    let printed = parse(stdout(&o).trim()).unwrap();
    assert!(diff_eq(&printed, &parse(src).unwrap()));
}

#[test]
fn exit_codes() {
    assert_eq!(leps(&["equiv", "-e", "s + t", "-e", "t + s"]).status.code(), Some(0));
    assert_eq!(leps(&["equiv", "-e", "s", "-e", "t"]).status.code(), Some(1));
    assert_eq!(leps(&["typecheck", "--type", "a", "-e", "x"]).status.code(), Some(1));
    assert_eq!(leps(&["typecheck", "--type", "a", "--ctx", "x:a", "-e", "x"]).status.code(), Some(0));
    assert_eq!(leps(&["normalize", "--fuel", "20", "-e", "(\\x. x x) (\\x. x x)"]).status.code(), Some(1));
    assert_eq!(leps(&["parse", "-e", "(x"]).status.code(), Some(2));
    assert_eq!(leps(&["--bogus"]).status.code(), Some(2));
    assert_eq!(leps(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(leps(&["equiv", "-e", "x"]).status.code(), Some(2));
}

#[test]
fn json_envelope_is_stable() {
    let v = json(&["equiv", "-e", "s + t", "-e", "t + s"]);
    assert_eq!(v["command"], "equiv");
    assert_eq!(v["result"]["equivalent"], true);
    assert!(v["diagnostics"].as_array().unwrap().is_empty());
    assert_eq!(v, json(&["equiv", "-e", "s + t", "-e", "t + s"]));
    let err = json(&["parse", "-e", "(x"]);
    assert_eq!(err["command"], "parse");
    assert!(!err["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn stdin_input() {
    let o = leps_stdin(&["erase", "-"], "x + eps y");
    assert_eq!(o.status.code(), Some(0));
    let erased = parse(stdout(&o).trim()).unwrap();
    assert!(!erased.contains_eps());
    assert!(diff_eq(&erased, &parse("x").unwrap()));
}

#[test]
fn reduce_lists_reparseable_reducts() {
    let o = leps(&["reduce", "-e", "(\\x. x) y + (\\z. z) w"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    for l in lines {
        let reduct = l.rsplit_once(": ").unwrap().1;
        parse(reduct).unwrap();
    }
}

#[test]
fn eval_prints_one_row_per_environment() {
    let o = leps(&["eval", "-e", "(D(\\x:a. x + x) * z) z", "--ctx", "z:a", "--type", "a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "z=0: 0\nz=1: 2\nz=2: 1\n");
}

#[test]
fn infers_types() {
    let o = leps(&["typecheck", "-e", "\\x:a. x"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim().ends_with(": a -> a"), "{}", stdout(&o));
}

#[test]
fn fuzz_and_axioms() {
    let o = leps(&["fuzz", "--suite", "taylor", "--count", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("20 passed, 0 failed"));
    assert_eq!(leps(&["fuzz", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(leps(&["axioms", "--budget", "200"]).status.code(), Some(0));
}

#[test]
fn committed_docs_are_up_to_date() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs");
    let o = leps(&["docs", "--check", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
