//! End-to-end runs of the `embedcount` binary.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_embedcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn env_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

#[test]
fn classify_lists_split_and_nonsplit_types() {
    let o = run(&["classify", "--shape", "1,2,4", "--p", "2", "--n", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "type,shape,lambda");
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1], "split,\"1,2,4\",4");
    assert_eq!(lines[2], "nonsplit,\"1,2,4\",1");
    assert_eq!(lines[3], "nonsplit,\"1,2,4\",2");
}

#[test]
fn classify_canonicalizes_a_coefficient_vector() {
    let o = run(&[
        "classify", "--shape", "1,2", "--p", "3", "--n", "1", "--c", "0,1",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        r#"{"lambda":2,"shape":"1,2","split":false}"#
    );
}

#[test]
fn group_reports_census_and_axioms() {
    let o = run(&[
        "group",
        "--shape",
        "1",
        "--p",
        "2",
        "--n",
        "1",
        "--c",
        "1",
        "--census",
        "--certify",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["census"]["4"], 2);
    assert_eq!(v["axioms"], true);
}

#[test]
fn bad_shape_exits_with_validation_status() {
    let o = run(&["classify", "--shape", "5", "--p", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("'5'"));
}

#[test]
fn count_is_certified_by_enumeration() {
    let f = env_file(r#"{"p":3,"n":1,"i_kf":"-inf","d":[1,1]}"#);
    let path = f.path().to_str().unwrap();
    let o = run(&[
        "count",
        "--env",
        path,
        "--module",
        "1",
        "--mu",
        "1",
        "--certify",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["certified"], true);
    assert_eq!(v["count"], v["oracle"]);
}

#[test]
fn infinite_environment_counts_are_infinite() {
    let f = env_file(r#"{"p":3,"n":1,"i_kf":"-inf","d":["inf",0]}"#);
    let o = run(&[
        "count",
        "--env",
        f.path().to_str().unwrap(),
        "--module",
        "1",
        "--mu",
        "3",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(r#""count":"inf""#));
}

#[test]
fn excluded_prime_power_is_rejected() {
    let f = env_file(r#"{"p":2,"n":1,"i_kf":"-inf","d":[1,1]}"#);
    let o = run(&[
        "solve",
        "--env",
        f.path().to_str().unwrap(),
        "--module",
        "1",
        "--mu",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn table_sweep_is_deterministic_csv() {
    let f = env_file(r#"{"p":3,"n":1,"i_kf":0,"d":[1,1]}"#);
    let args = [
        "table",
        "--env",
        f.path().to_str().unwrap(),
        "--sweep",
        "maxdim:2",
        "--certify",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("module,mu,solvable,count,certified\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    let list = run(&[
        "table",
        "--env",
        f.path().to_str().unwrap(),
        "--sweep",
        "1;2",
    ]);
    assert_eq!(
        stdout(&list).lines().next(),
        Some("module,mu,solvable,count")
    );
    assert_eq!(stdout(&list).lines().count(), 5);
}

#[test]
fn verify_single_case_and_small_suite() {
    let f = env_file(r#"{"p":3,"n":1,"i_kf":0,"d":[1,1]}"#);
    let o = run(&[
        "verify",
        "--env",
        f.path().to_str().unwrap(),
        "--module",
        "1",
        "--mu",
        "3",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("cases,1,mismatches,0\n"));
    let o = run(&["verify", "--suite", "desk", "--max-dim", "4"]);
    assert!(o.status.success());
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(
        last.starts_with("cases,") && last.ends_with(",mismatches,0"),
        "{last}"
    );
    let o = run(&[
        "verify",
        "--suite",
        "random",
        "--seed",
        "7",
        "--samples",
        "40",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("cases,40,mismatches,0\n"));
}

#[test]
fn realize_and_bound() {
    let o = run(&[
        "realize", "--shape", "2,3", "--lambda", "2", "--p", "3", "--n", "1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"lambda":2,"shape":"2,3"}"#);
    let o = run(&[
        "bound", "--shape", "2^2", "--lambda", "2", "--k", "2", "--p", "3", "--n", "1",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        r#"{"bound":"9","excluded_form":false,"within_free_rank":false}"#
    );
    let o = run(&[
        "bound", "--shape", "2^2", "--lambda", "2", "--k", "3", "--p", "3", "--n", "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumerate_lists_solutions() {
    let f = env_file(r#"{"p":3,"n":1,"i_kf":0,"d":[1,1]}"#);
    let o = run(&[
        "enumerate",
        "--env",
        f.path().to_str().unwrap(),
        "--module",
        "3",
        "--mu",
        "3",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("solution,generators"));
    let c = run(&[
        "count",
        "--env",
        f.path().to_str().unwrap(),
        "--module",
        "3",
        "--mu",
        "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&c).trim()).unwrap();
    assert_eq!(v["count"], (text.lines().count() - 1).to_string());
}
