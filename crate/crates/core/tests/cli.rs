use std::process::Command;

use incentive_core::cli::{parse_set, run};
use incentive_core::IncentiveTree;
use serde_json::Value;

fn call(args: &str) -> (i32, String, String) {
    let argv = std::iter::once("incentives").chain(args.split_whitespace());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &str) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args}: {err}");
    out
}

#[test]
fn set_literals() {
    assert_eq!(parse_set("-3,2").unwrap(), vec![-3, 2]);
    assert_eq!(parse_set("5,7,9,11").unwrap(), vec![5, 7, 9, 11]);
    assert_eq!(parse_set("2,2").unwrap(), vec![2]);
    assert_eq!(parse_set(" 9, -1 ,4").unwrap(), vec![-1, 4, 9]);
    assert!(parse_set("").is_err());
    assert!(parse_set("1,,2").is_err());
    assert!(parse_set("1.5").is_err());
}

#[test]
fn closure_text() {
    assert_eq!(
        ok("closure --c=-3,2 --x=5,7,9,11"),
        "msg: 5,7,9,11,13 | frobenius: 8 | genus: 6\n"
    );
    assert_eq!(
        ok("closure --c=-2,2 --x=4,6"),
        "msg: 4,6 | gcd: 2 | reduced: ⟨2,3⟩ | frobenius: 1 | genus: 1\n"
    );
}

#[test]
fn closure_json() {
    let v: Value =
        serde_json::from_str(&ok("closure --c=-3,2 --x=5,7,9,11 --format=json")).unwrap();
    assert_eq!(v["kind"], "numerical");
    assert_eq!(v["msg"], serde_json::json!([5, 7, 9, 11, 13]));
    assert_eq!(v["frobenius"], 8);
}

#[test]
fn simple_queries() {
    assert_eq!(ok("theta --c=-3,2"), "3\n");
    assert_eq!(ok("theta --c=4"), "0\n");
    assert_eq!(ok("admissible --c=-4 --x=3"), "false\n");
    assert_eq!(ok("admissible --c=-4,6 --x=2,8"), "true\n");
    assert_eq!(ok("check-incentive --c=-3,2 --gens=3,7,8"), "true\n");
    assert_eq!(ok("check-incentive --c=-4 --gens=3"), "false\n");
    assert_eq!(ok("membership --c=-3,2 --x=5,7,9,11 --n=13"), "true\n");
    assert_eq!(ok("membership --c=-3,2 --x=5,7,9,11 --n=8"), "false\n");
    assert_eq!(ok("membership --gens=3,5 --n=7"), "false\n");
}

#[test]
fn pricing_model() {
    let ab = "--a=5,7,9,11 --b=-3,0,2";
    assert_eq!(ok(&format!("mab invoice {ab} --seq=7,-3,9,2,5")), "20\n");
    assert_eq!(ok(&format!("mab member {ab} --n=14")), "true\n");
    assert_eq!(
        ok(&format!("mab set {ab} --bound=14")),
        "0,5,7,9,10,11,12,13,14\n"
    );
    let (code, _, err) = call(&format!("mab invoice {ab} --seq=7,1,5"));
    assert_eq!(code, 1);
    assert!(err.starts_with("error: ") && err.contains("x_2"), "{err}");
}

#[test]
fn restricted_tree_json() {
    let out = ok("tree --c=-3,2 --x=5 --max-depth=10 --format=json");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["metadata"]["node_count"], 6);
    assert_eq!(v["metadata"]["truncated"], false);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
    assert_eq!(v["nodes"][0]["msg"], serde_json::json!([3, 4, 5]));
    assert!(v["nodes"][0]["parent_id"].is_null());
    // round trip
    let tree = IncentiveTree::from_json(&out).unwrap();
    assert_eq!(tree.node_count(), 6);
    assert_eq!(tree.to_json(), out.trim_end());
}

#[test]
fn tree_dot() {
    let dot = ok("tree --c=-3,2 --x=5 --max-depth=10 --format=dot");
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("n0 [label=\"⟨3,4,5⟩\"];"));
    assert!(dot.contains("n4 -> n5 [label=\"8\"];"));
    assert_eq!(dot.matches("->").count(), 5);
}

#[test]
fn tree_text_nests_children_under_parents() {
    let text = ok("tree --c=-3,2 --max-frobenius=5");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "⟨3,4,5⟩  F=2 g=2");
    let branch = lines
        .iter()
        .position(|l| l.trim_start().starts_with("⟨3,5,7⟩"))
        .unwrap();
    assert!(lines[branch + 1].trim_start().starts_with("⟨3,7,8⟩ ∖{5}"));
}

#[test]
fn output_is_deterministic() {
    let cmd = "tree --c=-3,2 --max-genus=9 --format=json --threads=4";
    assert_eq!(ok(cmd), ok(cmd));
    assert_eq!(ok(cmd), ok("tree --c=-3,2 --max-genus=9 --format=json"));
}

#[test]
fn decomposition() {
    let v: Value =
        serde_json::from_str(&ok("decompose --c=-4,6 --max-frobenius=6 --format=json")).unwrap();
    let text = v.to_string();
    assert!(
        text.contains("\"divisor\":1") && text.contains("\"divisor\":2"),
        "{text}"
    );
    let out = ok("decompose --c=-3,2 --max-frobenius=4");
    assert!(out.contains("d = 1") && !out.contains("d = 2"));
}

#[test]
fn verifications() {
    assert_eq!(
        call("verify theorem5 --a=5,7,9,11 --b=-3,0,2 --bound=200").0,
        0
    );
    assert_eq!(call("verify tree --c=-3,2 --max-frobenius=11").0, 0);
    assert_eq!(
        call("verify tree --c=-1,1 --max-frobenius=9 --debug-checks").0,
        0
    );
    assert_eq!(
        call("verify closure-agreement --c=-4,6 --x=2,8 --bound=100").0,
        0
    );
}

#[test]
fn exit_statuses() {
    let (code, out, err) = call("closure --c=-4 --x=3");
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert_eq!(err, "error: {3} is not {-4}-admissible\n");
    assert_eq!(call("closure --c=-3,2").0, 2);
    assert_eq!(call("closure --c=a --x=5").0, 2);
    assert_eq!(call("tree --c=-3,2 --max-genus=3 --max-depth=2").0, 2);
    assert_eq!(call("frobnicate").0, 2);
    assert_eq!(call("").0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_incentives");
    let out = Command::new(bin)
        .args(["admissible", "--c=-4", "--x=3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "false\n");
    let out = Command::new(bin)
        .args(["closure", "--c=-4", "--x=3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin)
        .args(["closure", "--bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
