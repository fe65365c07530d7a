use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let Output { status, stdout, .. } = Command::new(env!("CARGO_BIN_EXE_coherence")).args(args).output().unwrap();
    let body = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (status.code().unwrap(), body)
}

#[test]
fn parse_ok_and_errors() {
    let (code, body) = run(&["parse", "F(X1*X2)", "--doctrine", "lax-functor"]);
    assert_eq!(code, 0);
    assert_eq!(body["printed"], "F((X1*X2))");
    let (code, body) = run(&["parse", "F(X1*X2"]);
    assert_eq!(code, 2);
    assert_eq!(body["error"], "parse");
    assert_eq!(body["offset"], 7);
    let (code, _) = run(&["parse", "--moves", "assoc; sym@R"]);
    assert_eq!(code, 0);
}

#[test]
fn shadows_need_endomorphisms() {
    let dir = std::env::temp_dir().join(format!("coherence-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("chain.graph");
    std::fs::write(&graph, "X1: a -> b\nX2: b -> c\n").unwrap();
    let (code, body) = run(&["parse", "⟨X1*X2⟩", "--doctrine", "shadow", "--graph", graph.to_str().unwrap()]);
    assert_eq!(code, 3, "{body}");
    let (code, _) = run(&["parse", "X1*X2", "--doctrine", "bicategory", "--graph", graph.to_str().unwrap()]);
    assert_eq!(code, 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn decide_verdicts() {
    let (code, body) = run(&[
        "decide", "--dom", "X1*(X2*(X3*X4))", "--f", "assoc; assoc", "--g", "assoc@R; assoc; assoc@L",
    ]);
    assert_eq!(code, 0);
    assert_eq!(body["verdict"], "equal");

    let (code, body) =
        run(&["decide", "--doctrine", "lax-functor", "--dom", "F(I)", "--f", "lu~; unit@L", "--g", "ru~; unit@R"]);
    assert_eq!(code, 1);
    assert_eq!(body["verdict"], "not_equal");
    assert_eq!(body["differs"][0], "support");

    let (code, body) = run(&["decide", "--doctrine", "symmetric", "--dom", "X1*X2", "--f", "", "--g", "sym"]);
    assert_eq!(code, 1);
    assert_eq!(body["verdict"], "not_parallel");

    let (code, _) = run(&["decide", "--dom", "X1*X2", "--f", "sym", "--g", ""]);
    assert_eq!(code, 3);
}

#[test]
fn witness_and_invariant() {
    let (code, body) = run(&["witness", "--doctrine", "symmetric", "--dom", "X1*X2", "--target-perm", "2,1"]);
    assert_eq!(code, 0);
    assert_eq!(body["moves"], "sym");
    assert_eq!(body["invariant"]["perm"], serde_json::json!([2, 1]));

    let (code, body) = run(&["witness", "--dom", "X1*X2", "--cod", "X2*X1"]);
    assert_eq!(code, 4);
    assert_eq!(body["error"], "frontier_mismatch");

    let (code, body) =
        run(&["witness", "--doctrine", "lax-functor", "--dom", "F(X1*X2)", "--cod", "F(X1)*F(X2)"]);
    assert_eq!(code, 4);
    assert_eq!(body["error"], "unreachable");

    let (code, body) = run(&["invariant", "--doctrine", "shadow", "--dom", "⟨X1*X2⟩", "--moves", "rot:1"]);
    assert_eq!(code, 0);
    assert_eq!(body["codomain"], "sh[(X2*X1)]");
}

#[test]
fn enumerate_and_dot() {
    let (code, body) = run(&["enumerate", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(body, serde_json::json!({"objects": 14, "edges": 21, "connected": true}));

    let dot = std::env::temp_dir().join(format!("coherence-{}.dot", std::process::id()));
    let (code, _) = run(&["enumerate", "--n", "4", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph component {"));
    assert_eq!(text.lines().filter(|l| l.contains("->")).count(), 5);
    std::fs::remove_file(&dot).ok();
}

#[test]
fn bound_exceeded_exits_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_coherence"))
        .args(["enumerate", "--n", "6"])
        .env("COHERENCE_MAX_OBJECTS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let body: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["error"], "bound_exceeded");
}

#[test]
fn verify_counts() {
    let (code, body) = run(&["verify", "--suite", "counts"]);
    assert_eq!(code, 0);
    assert_eq!(body["passed"], true);
    let (code, _) = run(&["verify", "--suite", "bogus"]);
    assert_eq!(code, 2);
}
