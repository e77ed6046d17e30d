//! End-to-end runs of the `homweight` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homweight"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--json", "--no-timestamp"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn weights_json_shape() {
    let v = json(&["--ring", "Z4", "weights"]);
    assert_eq!(v["command"], "weights");
    assert_eq!(v["ring"], "Z4");
    let w: Vec<&str> = v["weights"].as_array().unwrap().iter().map(|e| e["weight"].as_str().unwrap()).collect();
    assert_eq!(w, ["0/1", "1/1", "2/1", "1/1"]);
    assert_eq!(v["weights"][2]["index"], 2);
    assert!(v.get("timestamp").is_none());
}

#[test]
fn timestamp_present_by_default() {
    let out = run(&["--ring", "Z4", "weights", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["timestamp"].as_u64().is_some());
}

#[test]
fn deterministic_output() {
    for args in [
        &["--ring", "M(2,GF(2)) x GF(2)", "weights"][..],
        &["--ring", "ex5_5", "dual", "--partition", "ex5_5", "--side", "both"],
        &["--ring", "M(2,GF(2))", "krawtchouk", "--partition", "rank"],
        &["reproduce", "ex5_11b"],
    ] {
        let mut all = args.to_vec();
        all.extend(["--json", "--no-timestamp"]);
        let a = run(&all);
        let b = run(&all);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn report_round_trips() {
    let out = run(&["--ring", "ex5_5", "dual", "--side", "both", "--json", "--no-timestamp"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    assert_eq!(v["command"], "dual");
    assert_eq!(v["ring"], "ex5_5");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--ring", "M(2,Z4)", "info"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "foo"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "ex9_9"]).status.code(), Some(2));
    assert_eq!(run(&["weights"]).status.code(), Some(2));
    assert_eq!(run(&["--ring", "nosuchring", "info"]).status.code(), Some(2));
    assert_eq!(run(&["--ring", "M(3,GF(3))", "info"]).status.code(), Some(3));
    assert_eq!(run(&["--ring", "Z4", "--max-size", "3", "weights"]).status.code(), Some(3));
    assert_eq!(run(&["--ring", "Z4", "partition", "rank"]).status.code(), Some(2));
    assert_eq!(run(&["--ring", "Z4", "info"]).status.code(), Some(0));
}

#[test]
fn ex5_5_duals_differ() {
    let v = json(&["--ring", "ex5_5", "dual", "--partition", "ex5_5", "--side", "both"]);
    assert_eq!(v["duals_equal"], false);
    assert_eq!(v["partition_blocks"], 4);
    let hom = json(&["--ring", "ex5_5", "krawtchouk", "--side", "both"]);
    assert_eq!(hom["tables_equal"], true);
}

#[test]
fn partitions_by_kind() {
    let v = json(&["--ring", "M(2,GF(2)) x GF(2)", "partition", "hom"]);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 4);
    let v = json(&["--ring", "M(2,GF(2)) x M(2,GF(2))", "partition", "sym2"]);
    assert_eq!(v["block_sizes"].as_array().unwrap().len(), 6);
    let v = json(&["--ring", "GF(3) x GF(3)", "partition", "product"]);
    assert_eq!(v["labels"], serde_json::json!([[0, 0], [0, 1], [1, 0], [1, 1]]));
    let v = json(&["--ring", "ex5_5", "partition", "ex5_5"]);
    assert_eq!(v["invariant"], true);
}

#[test]
fn reproduce_examples() {
    let v = json(&["reproduce", "ex4_5_q2"]);
    assert_eq!(v["match"], true);
    assert_eq!(v["expected"]["merged_weight"], "8/9");
    let v = json(&["reproduce", "ex5_11b"]);
    assert_eq!(v["match"], true);
    assert_eq!(v["computed"]["dual"]["blocks"].as_array().unwrap().len(), 4);
    assert_eq!(json(&["reproduce", "ex2_3_local"])["match"], true);
}

#[test]
fn verify_suites() {
    for suite in ["axioms", "weights", "partitions", "duality"] {
        let v = json(&["verify", suite]);
        assert_eq!(v["all_pass"], true, "{suite}: {v}");
        assert!(v["checks"][0]["anchor"].is_string());
    }
}

#[test]
fn character_choice() {
    let a = json(&["--ring", "Z8", "weights"]);
    let b = json(&["--ring", "Z8", "--char", "index:1", "weights"]);
    assert_eq!(a["weights"], b["weights"]);
    assert_eq!(run(&["--ring", "Z8", "--char", "index:99", "weights"]).status.code(), Some(2));
    assert_eq!(run(&["--ring", "Z8", "--char", "bogus", "weights"]).status.code(), Some(2));
}

#[test]
fn table_file_ring() {
    let dir = std::env::temp_dir().join(format!("homweight-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{not json").unwrap();
    let expr = format!("table:{}", path.display());
    assert_eq!(run(&["--ring", &expr, "info"]).status.code(), Some(2));
    assert_eq!(run(&["--ring", "table:/nonexistent/ring.json", "info"]).status.code(), Some(2));
}
