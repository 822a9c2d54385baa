use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimorph")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn classify_reports_branches_with_exit_codes() {
    let out = run(&["classify", "--spec", "rado"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["branch"], "MB-evidence");

    let out = run(&["classify", "--spec", "cliques(3)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["branch"], "UH-evidence");
    assert_eq!(v["m_verdict"]["verdict"], "refuted-analytic");

    let out = run(&["classify", "--spec", "union(cliques(2),cliques(3))"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["branch"], "inconclusive");
}

#[test]
fn extend_returns_a_partial_bimorphism() {
    let out = run(&["extend", "--spec", "rado", "--map", r#"{"dom":[0,2],"img":[0,1]}"#, "--depth", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let pairs = v["pairs"].as_array().unwrap();
    assert!(pairs.iter().any(|p| p[0] == 0 && p[1] == 0));
    assert!(pairs.iter().any(|p| p[0] == 2 && p[1] == 1));

    let out = run(&["extend", "--spec", "empty", "--map", r#"{"dom":[3],"img":[5]}"#, "--depth", "6"]);
    assert_eq!(out.status.code(), Some(0));

    // A nonedge onto a nonedge is fine, but an edge cannot go to a nonedge.
    let out = run(&["extend", "--spec", "rado", "--map", r#"{"dom":[0,1],"img":[0,2]}"#, "--depth", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        &["gen", "--spec", "gnp(p=0.5,seed=7)", "--n", "12"][..],
        &["check", "--spec", "rado", "--prop", "triangle", "--seed", "3"][..],
        &["clique-force", "--spec", "rado", "--set", "0,2,5,9"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn gen_emits_dot_and_json() {
    let out = run(&["gen", "--spec", "cliques(2)", "--n", "4", "--dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph"));
    assert!(text.contains("0 -- 1") && text.contains("2 -- 3") && !text.contains("1 -- 2"));
}

#[test]
fn census_lists_every_pair_of_kinds() {
    let out = run(&["census", "--max-order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("graph_id,X,Y,verdict"));
    assert_eq!(lines.count(), (1 + 2 + 4) * 18);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "--spec", "rado("]).status.code(), Some(1));
    assert_eq!(run(&["gen", "--spec", "rado"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
