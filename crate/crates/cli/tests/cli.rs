use std::process::{Command, Output};

use serde_json::Value;

fn csm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csm"))
        .args(args)
        .env_remove("CSM_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn csm_table_for_s1s2() {
    let o = csm(&["csm", "--type", "A2", "--w", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["id", "s1", "s2", "s1s2"]);
    assert_eq!(v["id"], 1);
    assert_eq!(v["s1"], 1);
    assert_eq!(v["s2"], 2);
    assert_eq!(v["s1s2"], 1);
}

#[test]
fn equivariant_table_and_empty_word() {
    let v = json(&csm(&["csm", "--type", "A2", "--w", "1", "--equivariant"]));
    assert_eq!(v, serde_json::json!({"id": "1", "s1": "1 + a1"}));
    let v = json(&csm(&["csm", "--type", "A2", "--w", ""]));
    assert_eq!(v, serde_json::json!({"id": 1}));
}

#[test]
fn permutation_input_and_single_v() {
    let v = json(&csm(&["csm", "--n", "3", "--w", "[2,3,1]", "--v", "2"]));
    assert_eq!(v, serde_json::json!({"s2": 2}));
    let v = json(&csm(&["csm", "--n", "3", "--w", "1", "--v", "2"]));
    assert_eq!(v, serde_json::json!({"s2": 0}));
}

#[test]
fn csv_and_markdown() {
    let o = csm(&["csm", "--type", "A2", "--w", "1,2", "--csv"]);
    assert_eq!(stdout(&o), "v,c(w;v)\nid,1\ns1,1\ns2,2\ns1s2,1\n");
    let o = csm(&["csm", "--type", "A2", "--w", "1", "--md"]);
    assert_eq!(stdout(&o), "| v | c(w;v) |\n|---|---|\n| id | 1 |\n| s1 | 1 |\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(csm(&["csm", "--type", "A2", "--w", "1,3"]).status.code(), Some(2));
    assert_eq!(csm(&["csm", "--type", "Z9", "--w", "1"]).status.code(), Some(2));
    assert_eq!(csm(&["csm", "--w", "1"]).status.code(), Some(2));
    assert_eq!(csm(&["verify", "nonsense", "--n", "3"]).status.code(), Some(2));
    assert_eq!(csm(&["bogus"]).status.code(), Some(2));
    let o = csm(&["verify", "main", "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("scope too large"));
}

#[test]
fn verify_report_schema() {
    let o = csm(&["verify", "main", "--n", "4", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    for key in ["identity", "scope", "checked", "violations", "elapsed_ms", "version", "status"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["identity"], "main");
    assert_eq!(r["checked"], 576);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["violations"], serde_json::json!([]));
    assert_eq!(r["scope"]["n"], 4);
}

#[test]
fn verify_top_in_b2() {
    let r = json(&csm(&["verify", "top", "--type", "B2"]));
    assert_eq!(r["status"], "pass");
    assert_eq!(r["checked"], 64);
}

#[test]
fn conjecture_reports() {
    let r = json(&csm(&["conjecture", "f-nonneg", "--n", "3"]));
    assert_eq!(r["status"], "holds");
    assert!(!r["table"].as_array().unwrap().is_empty());
    let o = csm(&["conjecture", "refined", "--n", "4", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("refined,holds,"));
}

#[test]
fn matrix_file_type() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    std::fs::write(&path, r#"{"rank": 2, "matrix": [[2, -1], [-3, 2]]}"#).unwrap();
    let r = json(&csm(&["verify", "top", "--type", path.to_str().unwrap()]));
    assert_eq!(r["status"], "pass");
    assert_eq!(r["scope"]["order"], 12);
}

#[test]
fn output_is_deterministic_and_cache_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.json");
    let fresh = csm(&["csm", "--n", "4", "--w", "1,2,3,1", "--equivariant"]);
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_csm"))
            .args(["csm", "--n", "4", "--w", "1,2,3,1", "--equivariant"])
            .args(extra)
            .env("CSM_CACHE_DIR", dir.path().join("cache"))
            .output()
            .unwrap()
    };
    let first = run(&[]);
    let cached = run(&[]);
    assert_eq!(stdout(&fresh), stdout(&first));
    assert_eq!(stdout(&first), stdout(&cached));
    assert_eq!(std::fs::read_dir(dir.path().join("cache")).unwrap().count(), 1);
    run(&["--out", out.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout(&fresh));
}
