use std::process::{Command, Output};

use serde_json::Value;

fn cohen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> (Value, i32) {
    let o = cohen(&[&["--json"], args].concat());
    let v = serde_json::from_str(&stdout(&o)).expect("valid json");
    (v, o.status.code().expect("exit code"))
}

#[test]
fn expand_commutator() {
    let o = cohen(&["expand", "--n", "2", "[x1,x2]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1 + y1.y2 - y2.y1");
}

#[test]
fn expand_trivial_and_torsion() {
    assert_eq!(stdout(&cohen(&["expand", "--n", "3", "x1^0"])).trim(), "1");
    let o = cohen(&["--ring", "zmod:4", "expand", "--n", "2", "--k", "2", "{x1|x2}^4"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn basis_listing() {
    let out = stdout(&cohen(&["basis", "--n", "3", "--t", "2"]));
    assert!(out.trim_end().ends_with("count: 6"));
    let out = stdout(&cohen(&["basis", "--n", "2", "--t", "3"]));
    assert!(out.trim_end().ends_with("count: 0"));
    let (v, code) = json(&["basis", "--n", "2", "--t", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 2);
    assert_eq!(v["result"]["monomials"], serde_json::json!(["y1.y2", "y2.y1"]));
}

#[test]
fn json_schema() {
    let (v, _) = json(&["expand", "--n", "2", "[x1,x2]"]);
    let obj = v.as_object().expect("object");
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["caveats", "command", "inputs", "result"]);
    assert_eq!(v["command"], "expand");
    assert_eq!(v["inputs"]["n"], 2);
    assert_eq!(v["result"]["canon"], "1 + y1.y2 - y2.y1");
    assert_eq!(v["caveats"], serde_json::json!([]));
}

#[test]
fn eq_verdicts_and_exit_codes() {
    let (v, code) = json(&["eq", "--n", "2", "x1 x2", "x2 x1"]);
    assert_eq!((v["result"]["equal"].clone(), code), (Value::Bool(false), 1));
    let (v, code) = json(&["eq", "--n", "2", "[x1,x2]", "x1^-1 x2^-1 x1 x2"]);
    assert_eq!((v["result"]["equal"].clone(), code), (Value::Bool(true), 0));
    let (v, code) = json(&["eq", "--n", "3", "[x1^2,x2]", "[x1,x2^2]", "([x1,x2])^2"]);
    assert_eq!((v["result"]["equal"].clone(), code), (Value::Bool(true), 0));
}

#[test]
fn membership() {
    let (v, code) = json(&["member", "--kind", "hn", "--n", "2", "[x1,x2]"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["member"], true);
    let (v, code) = json(&["member", "--kind", "hn", "--n", "2", "x1"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["member"], false);
}

#[test]
fn lift_projects_back() {
    let o = cohen(&["lift", "--level", "2", "--n", "3", "[x1,x2]"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("member: true"));
    assert!(out.contains("projects back: true"));
}

#[test]
fn eval_theta() {
    let o = cohen(&["eval", "--n", "2", "y1.y2", "[1,0] (x) [0,1]"]);
    assert_eq!(stdout(&o).trim(), "e1.e2");
    let (v, code) = json(&["eval", "--n", "2", "--word", "[x1,x2]", "[1,0] (x) [0,1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"], "e1.e2 - e2.e1");
}

#[test]
fn ranks() {
    let (v, _) = json(&["ranks", "--what", "lie", "--n", "4"]);
    assert_eq!(v["result"]["rank"], 6);
    let (v, _) = json(&["ranks", "--what", "natural", "--n", "3"]);
    assert_eq!(v["result"]["rank"], 6);
    assert_eq!(v["result"]["matches_place_permutations"], true);
}

#[test]
fn caveats_on_stderr_and_json() {
    let (v, _) = json(&["--ring", "zmod:6", "expand", "--n", "4", "--k", "2", "{x1|x2}"]);
    assert_eq!(v["caveats"], serde_json::json!(["faithfulness-unproven"]));
    let o = cohen(&["--ring", "zmod:6", "expand", "--n", "4", "--k", "2", "{x1|x2}"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("caveat: faithfulness-unproven"));
}

#[test]
fn errors_exit_two() {
    assert_eq!(cohen(&["expand", "--n", "2", "x3"]).status.code(), Some(2));
    assert_eq!(cohen(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(cohen(&["expand"]).status.code(), Some(2));
    let (v, code) = json(&["--ring", "zmod:6", "ranks", "--what", "lie", "--n", "3"]);
    assert_eq!(code, 2);
    assert!(v["result"]["error"].is_string());
}

#[test]
fn verify_suite() {
    let (v, code) = json(&["verify", "--suite", "shuffle", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], true);
    let sequential = cohen(&["--exec", "sequential", "verify", "--suite", "basis"]);
    assert!(sequential.status.success());
    assert!(stdout(&sequential)
        .lines()
        .all(|l| l.starts_with("PASS") || l == "all checks passed"));
}
