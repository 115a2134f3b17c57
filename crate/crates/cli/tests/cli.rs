use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fmbkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmbkit")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = fmbkit(args);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\nstderr: {}", String::from_utf8_lossy(&out.stderr)));
    (code, v)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("fmbkit-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn lemma2_scenario() {
    let (code, v) = run_json(&["scenario", "lemma2", "--m", "0", "--n", "1", "--s", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["artifacts"]["certificate"]["basis"].as_array().unwrap().len(), 8);
    assert_eq!(v["artifacts"]["layer_counts"], json!([1, 2, 2, 2, 1]));
}

#[test]
fn roundtrip_scenario_reports_all_instances() {
    let (code, v) = run_json(&["scenario", "thm1-roundtrip", "--random", "100", "--seed", "7"]);
    assert_eq!(code, 0);
    let random = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "random").unwrap();
    assert!(random["detail"].as_str().unwrap().starts_with("100/100"));
}

#[test]
fn scenarios_are_byte_identical() {
    for name in ["lalpha", "thm2-probe"] {
        let a = fmbkit(&["scenario", name, "--samples", "500"]);
        let b = fmbkit(&["scenario", name, "--samples", "500"]);
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

#[test]
fn lalpha_flags_the_decomposition() {
    let (code, v) = run_json(&["scenario", "lalpha", "--p", "2"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    let claim = checks.iter().find(|c| c["name"] == "three-cyclic-claim").unwrap();
    assert_eq!(claim["status"], "evidence-only");
    assert!(claim["detail"].as_str().unwrap().starts_with("disagrees"));
    assert_eq!(v["artifacts"]["decomposition"]["decomposable"], json!(false));
}

#[test]
fn probe_scenario_never_passes_the_search() {
    let (code, v) = run_json(&["scenario", "thm2-probe", "--samples", "200"]);
    assert_eq!(code, 0);
    let search = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "random-search").unwrap();
    assert_eq!(search["status"], "evidence-only");
}

#[test]
fn convert_group_and_lie() {
    let (code, v) = run_json(&["convert", "--builtin", "D8"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 8);
    let (_, v) = run_json(&["convert", "--builtin", "c1"]);
    assert_eq!(v["result"]["dim"], 2);
    let (_, v) = run_json(&["convert", "--builtin", "D8", "--to", "lie"]);
    assert_eq!(v["result"]["labels"], json!(["a", "b", "a^2"]));
}

#[test]
fn malformed_input_exits_with_two() {
    let path = temp_file("bad.json", "{ not json");
    let out = fmbkit(&["convert", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = fmbkit(&["group", "powerful", "--builtin", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let path = temp_file("badgroup.json", r#"{"p": 2, "table": [[0, 1], [1, 1]]}"#);
    let out = fmbkit(&["group", "jennings", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_pass_and_fail() {
    let (code, v) = run_json(&["fmb", "verify", "--builtin", "x4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["certificate"]["layer_counts"], json!([1, 1, 1, 1]));
    // 1, x, x + x^2, x^3 is not multiplicative
    let input = json!({
        "algebra": { "field": {"kind": "prime", "p": 2}, "dim": 4,
                     "mult": [[0,0,0,1],[0,1,1,1],[0,2,2,1],[0,3,3,1],[1,0,1,1],[1,1,2,1],[1,2,3,1],
                              [2,0,2,1],[2,1,3,1],[3,0,3,1]] },
        "basis": [[1,0,0,0],[0,1,0,0],[0,1,1,0],[0,0,0,1]]
    });
    let path = temp_file("verify.json", &input.to_string());
    let (code, v) = run_json(&["fmb", "verify", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
}

#[test]
fn search_outcomes() {
    let (code, v) = run_json(&["fmb", "search", "--builtin", "FG:C4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "found");
    let (code, v) = run_json(&["fmb", "search", "--builtin", "FG:Q8"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["status"], "exhausted");
}

#[test]
fn quotient_from_file() {
    let (_, alg) = run_json(&["convert", "--builtin", "free2-2"]);
    // ideal generated by x^2 and xy - yx
    let input = json!({
        "algebra": alg["result"],
        "ideal": [[0,0,0,1,0,0,0],[0,0,0,0,1,1,0]]
    });
    let path = temp_file("quotient.json", &input.to_string());
    let (code, v) = run_json(&["fmb", "quotient", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["i0"], json!([3]));
    assert_eq!(v["result"]["quotient"]["dim"], 5);
}

#[test]
fn lie_commands() {
    let (code, v) = run_json(&["lie", "env", "--builtin", "H3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 27);
    let (_, v) = run_json(&["lie", "omega", "--builtin", "H3"]);
    assert_eq!(v["result"]["layer_dims"], json!([1, 2, 4, 4, 5, 4, 4, 2, 1]));
    assert_eq!(v["result"]["agree"], true);
    let (code, v) = run_json(&["lie", "grlie", "--builtin", "Lt"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["comparison"]["isomorphic"], true);
    let (_, v) = run_json(&["lie", "decompose", "--builtin", "Lt"]);
    assert_eq!(v["result"]["decomposable"], false);
    let (code, v) = run_json(&["lie", "word-basis", "--builtin", "h1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["layer_counts"], json!([1, 2, 2, 2, 1]));
    let (code, _) = run_json(&["lie", "word-basis", "--builtin", "H3"]);
    assert_eq!(code, 1);
    let (_, v) = run_json(&["lie", "family", "--m", "1", "--n", "1", "--s", "1"]);
    assert_eq!(v["result"]["dim"], 4);
    let (code, v) = run_json(&["lie", "family-fmb", "--m", "1", "--n", "1", "--s", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["certificate"]["basis"].as_array().unwrap().len(), 16);
}

#[test]
fn probe_command() {
    let (code, v) = run_json(&["fmb", "probe", "--builtin", "H3+c1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["span_dim"], 2);
}

#[test]
fn group_commands() {
    let (_, v) = run_json(&["group", "powerful", "--builtin", "D8"]);
    assert_eq!(v["result"]["powerful"], false);
    let (code, v) = run_json(&["group", "quillen", "--builtin", "M16"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["isomorphic"], true);
    let (_, v) = run_json(&["group", "corollary2", "--builtin", "3^1+2_+"]);
    assert_eq!(v["result"]["verdict"]["source"], "theorem");
    let (_, v) = run_json(&["group", "jennings", "--builtin", "C4"]);
    assert_eq!(v["result"]["chain_orders"], json!([4, 2, 1]));
}

#[test]
fn certify_identity_witness() {
    let (_, env) = run_json(&["lie", "env", "--builtin", "h1"]);
    let (_, words) = run_json(&["lie", "word-basis", "--builtin", "h1"]);
    let iso: Vec<Vec<u8>> = (0..8).map(|i| (0..8).map(|j| (i == j) as u8).collect()).collect();
    let input = json!({
        "algebra": env["result"]["algebra"],
        "m": 0, "n": 1, "s": 1,
        "basis": words["result"]["basis"],
        "ideal": [],
        "iso": iso,
    });
    let path = temp_file("heis.json", &input.to_string());
    let (code, v) = run_json(&["fmb", "certify-heisenberg", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["certified"], true);
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("fmbkit-{}-out.json", std::process::id()));
    let out = fmbkit(&["group", "powerful", "--builtin", "C4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["powerful"], true);
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
}
