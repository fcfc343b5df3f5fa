use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_congruence-dessins"));
    c.env_remove("DESSIN_CACHE_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn field_command() {
    let out = run(&["field", "2", "3", "7"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["k_minpoly"]["num"], serde_json::json!(["1", "-2", "-1", "1"]));
    let out = run(&["field", "2", "3", "inf"]);
    assert_eq!(json(&out)["degree"], 1);
    assert_eq!(run(&["field", "2", "3", "6"]).status.code(), Some(2));
    assert_eq!(run(&["field", "2", "3", "banana"]).status.code(), Some(2));
}

#[test]
fn splits_command() {
    let v = json(&run(&["splits", "2", "3", "7", "--ell", "13"]));
    let ideals = v["ideals"].as_array().unwrap();
    assert_eq!(ideals.len(), 3);
    assert!(ideals.iter().all(|p| p["f"] == 1));
    let v = json(&run(&["splits", "2", "3", "7", "--ell", "2"]));
    assert_eq!(v["ideals"], serde_json::json!([{"ell": 2, "g": [1, 0, 1, 1], "f": 3}]));
    let v = json(&run(&["splits", "2", "3", "inf", "--ell", "5"]));
    assert_eq!(v["ideals"].as_array().unwrap().len(), 1);
    assert_eq!(run(&["splits", "2", "3", "7", "--ell", "7"]).status.code(), Some(3));
}

#[test]
fn dessin_command() {
    for (args, n, g, cusps) in [
        (vec!["dessin", "2", "3", "inf", "--ell", "5"], 60, 0, 12),
        (vec!["dessin", "2", "3", "inf", "--ell", "7"], 168, 3, 24),
        (vec!["dessin", "2", "3", "7", "--ell", "13", "--ideal-index", "0"], 1092, 14, 0),
    ] {
        let v = json(&run(&args));
        assert_eq!(v["dessin"]["n"], n);
        assert_eq!(v["report"]["genus"], g);
        assert_eq!(v["report"]["cusps"], cusps);
    }
    // 3 divides an entry
    assert_eq!(run(&["dessin", "2", "3", "7", "--ell", "3"]).status.code(), Some(3));
    let forced = run(&["dessin", "2", "3", "7", "--ell", "3", "--force"]);
    assert_ne!(forced.status.code(), Some(3));
    let small = run(&["dessin", "2", "3", "inf", "--ell", "13", "--max-group-order", "100"]);
    assert_eq!(small.status.code(), Some(4));
    assert_eq!(run(&["dessin", "2", "3", "inf", "--ell", "5", "--ideal-index", "4"]).status.code(), Some(2));
}

#[test]
fn dessin_output_is_deterministic_and_cached() {
    let args = ["dessin", "2", "3", "7", "--ell", "13", "--ideal-index", "0"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let cold = bin().args(args).env("DESSIN_CACHE_DIR", dir.path()).output().unwrap();
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1);
    let warm = bin().args(args).env("DESSIN_CACHE_DIR", dir.path()).output().unwrap();
    assert_eq!(cold.stdout, a.stdout);
    assert_eq!(warm.stdout, a.stdout);

    let flag_dir = tempfile::tempdir().unwrap();
    let mut with_flag = args.to_vec();
    with_flag.extend(["--cache-dir", flag_dir.path().to_str().unwrap()]);
    assert_eq!(run(&with_flag).stdout, a.stdout);
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 1);
}

#[test]
fn orbit_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&["orbit", "2", "3", "7", "--ell", "13", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("verdict: invariants agree"));
    assert_eq!(table.matches("1092").count(), 3);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(report["verdict"], true);
    assert_eq!(report["orbits"].as_array().unwrap().len(), 1);
    assert_eq!(
        report["iso_matrix"],
        serde_json::json!([[[true, false, false], [false, true, false], [false, false, true]]])
    );
}

#[test]
fn selftest_command() {
    let a = run(&["selftest"]);
    let b = run(&["selftest"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    let all_pass = text.lines().all(|l| l.contains("[PASS]"));
    assert_eq!(a.status.success(), all_pass);

    let faulty = run(&["selftest", "--inject-fault"]);
    assert_ne!(faulty.status.code(), Some(0));
    assert!(String::from_utf8(faulty.stdout).unwrap().contains("[FAIL]"));
}
