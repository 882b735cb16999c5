use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn spack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spack")).args(args).env_remove("SPACK_NODE_BUDGET").output().expect("spawn")
}

fn spack_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spack"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{e}: {text}"))
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn chi_values() {
    let out = spack(&["chi", "--family", "cycle:7", "--seq", "2,const", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["chi"], 4);
    let out = spack(&["chi", "--family", "complete:1", "--seq", "1,inc", "--format", "json"]);
    assert_eq!(json(&out)["chi"], 1);
}

#[test]
fn chi_of_p14_is_seven() {
    // Seven colors suffice; see the witness check in the core tests.
    let out = spack(&["chi", "--family", "path:14", "--seq", "2,3,11,const", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["chi"], 7);
    assert_eq!(v["witness"].as_array().unwrap().len(), 14);
}

#[test]
fn human_output_names_the_value() {
    let out = spack(&["chi", "--family", "cycle:5", "--seq", "1,const"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("chi_S = 3\n"), "{text}");
    assert!(text.contains("witness: "));
}

#[test]
fn graph_sources() {
    let by_g6 = spack(&["chi", "--g6", "Dhc", "--seq", "1,const", "--format", "json"]);
    assert_eq!(json(&by_g6)["chi"], 3);
    let by_edges = spack(&["chi", "--edges", "0-1,1-2,2-3,3-4,4-0", "--seq", "1,const", "--format", "json"]);
    assert_eq!(json(&by_edges)["chi"], 3);
    let by_stdin = spack_stdin(&["chi", "--seq", "1,const", "--format", "json"], "Dhc\n");
    assert_eq!(json(&by_stdin)["chi"], 3);
    let edge_stdin = spack_stdin(&["chi", "--seq", "1,const", "--format", "json"], "n=3\n0 1\n");
    assert_eq!(json(&edge_stdin)["witness"].as_array().unwrap().len(), 3);

    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("spack_cli_c5.g6");
    std::fs::write(&path, "Dhc\n").unwrap();
    let by_file = spack(&["chi", "--file", path.to_str().unwrap(), "--seq", "1,const", "--format", "json"]);
    assert_eq!(json(&by_file)["chi"], 3);
}

#[test]
fn two_sources_is_a_usage_error() {
    let out = spack(&["chi", "--g6", "Dhc", "--family", "path:3", "--seq", "1,const"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(spack(&["chi", "--family", "path:3", "--seq", "2,1,const"]).status.code(), Some(2));
    assert_eq!(spack(&["chi", "--family", "nope:3", "--seq", "1,const"]).status.code(), Some(2));
    assert_eq!(spack(&["chi", "--g6", "D", "--seq", "1,const"]).status.code(), Some(2));
    assert_eq!(spack(&["chi", "--family", "path:3"]).status.code(), Some(2));
    assert_eq!(spack(&["chi", "--family", "path:3", "--seq", "1,const", "--nodes", "0"]).status.code(), Some(2));
}

#[test]
fn timeout_exit_3_with_bounds() {
    let out = spack(&["chi", "--family", "path:14", "--seq", "2,3,11,const", "--nodes", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["status"], "timeout");
    assert!(v["lower"].as_u64().unwrap() <= 7 && v["upper"].as_u64().unwrap() >= 7);
}

#[test]
fn env_budget_is_read() {
    let out = Command::new(env!("CARGO_BIN_EXE_spack"))
        .args(["chi", "--family", "path:14", "--seq", "2,3,11,const"])
        .env("SPACK_NODE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn critical_reports() {
    let out = spack(&["critical", "--family", "cycle:5", "--seq", "1,2,2,const", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["chi"], 4);
    assert_eq!(v["is_critical"], true);
    let out = spack(&["critical", "--family", "star:3", "--seq", "2,2,2,const", "--format", "json"]);
    let v = json(&out);
    assert_eq!((v["chi"].as_u64(), v["is_critical"].as_bool()), (Some(4), Some(true)));
    let out = spack(&["critical", "--g6", "@", "--seq", "1,inc", "--format", "json"]);
    let v = json(&out);
    assert_eq!((v["chi"].as_u64(), v["is_critical"].as_bool()), (Some(1), Some(true)));
}

#[test]
fn critical_table_in_human_mode() {
    let out = spack(&["critical", "--family", "path:4", "--seq", "1,const"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("edge      chi(G-e)"));
    assert!(text.contains("critical: false"));
}

#[test]
fn double_star_bridge() {
    let out = spack(&["double", "--family", "star_bridge:3", "--seq", "1,3,const", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["colors_used"], 4);
    assert_eq!(v["input_colors"], 2);
}

#[test]
fn double_clique_path_within_six() {
    let out = spack(&["double", "--family", "clique_path:2", "--seq", "2,5,const", "--format", "json"]);
    let v = json(&out);
    assert!(v["colors_used"].as_u64().unwrap() <= 6);
}

#[test]
fn double_without_pairs_is_identity() {
    // P_3 under (1,1,...): G - e colored 1,2,1 already works on G.
    let out = spack(&[
        "double", "--family", "path:3", "--seq", "1,const", "--edge", "0,1", "--coloring", "1,2,1", "--format", "json",
    ]);
    let v = json(&out);
    assert_eq!(v["coloring"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["recolored"], serde_json::json!([]));
}

#[test]
fn double_needs_an_edge() {
    assert_eq!(spack(&["double", "--g6", "Dhc", "--seq", "1,const"]).status.code(), Some(2));
    assert_eq!(spack(&["double", "--g6", "Dhc", "--seq", "1,const", "--edge", "0,2"]).status.code(), Some(2));
}

#[test]
fn double_rejects_invalid_input_coloring() {
    let out = spack(&["double", "--family", "path:3", "--seq", "1,const", "--edge", "0,1", "--coloring", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_checks() {
    for (id, nmax) in [("lemma.wsets", "7"), ("edgebound.ii", "6")] {
        let out = spack(&["verify", "--id", id, "--nmax", nmax, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{id}");
        assert_eq!(json(&out)["verdict"], "PASS");
    }
}

#[test]
fn verify_fail_exits_1() {
    let out = spack(&["verify", "--id", "sharpness.p14", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "FAIL");
    assert!(v["counterexample"]["colorings"][0].as_array().is_some());
}

#[test]
fn verify_all_records_in_registry_order() {
    let list = spack(&["verify", "--list"]);
    let ids: Vec<String> =
        String::from_utf8(list.stdout).unwrap().lines().map(|l| l.split_whitespace().next().unwrap().into()).collect();
    let out = spack(&["verify", "--all", "--nmax", "6", "--workers", "2", "--format", "json"]);
    let records = json_lines(&out);
    let got: Vec<&str> = records.iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(got, ids);
    let failed: Vec<&str> =
        records.iter().filter(|r| r["verdict"] == "FAIL").map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(
        failed,
        ["prop.s222", "manycases.iv", "smallcases.i", "smallcases.ii", "smallcases.iii", "sharpness.p14"]
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_output_is_stable() {
    let args = ["verify", "--id", "manycases.vi", "--nmax", "6", "--format", "json"];
    assert_eq!(spack(&args).stdout, spack(&args).stdout);
}

#[test]
fn verify_rejects_sequences_outside_the_class() {
    let out = spack(&["verify", "--id", "manycases.i", "--seq", "2,const"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(spack(&["verify", "--id", "nope"]).status.code(), Some(2));
    assert_eq!(spack(&["verify"]).status.code(), Some(2));
}

#[test]
fn verify_with_a_corpus_reaches_past_the_enumeration() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("spack_cli_corpus.g6");
    // C_9 and C_10 under (1,1,...): only the odd one is 3-critical.
    let c9 = spack(&["families", "gen", "cycle:9"]);
    let c10 = spack(&["families", "gen", "cycle:10"]);
    let text = format!("{}{}", String::from_utf8_lossy(&c9.stdout), String::from_utf8_lossy(&c10.stdout));
    std::fs::write(&path, text).unwrap();
    let out = spack(&["verify", "--id", "manycases.i", "--nmax", "10", "--corpus", path.to_str().unwrap(), "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["verdict"], "PASS", "{v}");
    assert!(v["observed"].as_str().unwrap().contains("cycle:9"));
    let no_corpus = spack(&["verify", "--id", "manycases.i", "--nmax", "10"]);
    assert_eq!(no_corpus.status.code(), Some(2));
}

#[test]
fn families_gen_formats() {
    let out = spack(&["families", "gen", "g:6"]);
    let g6 = String::from_utf8(out.stdout).unwrap();
    let x6 = String::from_utf8(spack(&["families", "gen", "x:6"]).stdout).unwrap();
    assert_eq!(g6.len(), x6.len());
    let edges = String::from_utf8(spack(&["families", "gen", "path:3", "--as", "edges"]).stdout).unwrap();
    assert_eq!(edges, "n=3\n0 1\n1 2\n");
}

#[test]
fn find_three_critical() {
    let out = spack(&["find", "--k", "3", "--nmax", "6", "--seq", "1,2,const", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["found"].as_array().unwrap().len(), 2);
}

#[test]
fn explore_cutedge_runs() {
    let out = spack(&["explore", "cutedge", "--nmax", "5", "--seq", "1,3,const", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["cut_edges"].as_u64().unwrap() > 0);
}
