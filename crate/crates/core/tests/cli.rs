use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_obstruction-lab"))
}

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel).display().to_string()
}

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = bin().args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json, out)
}

fn failing(report: &Value) -> Vec<String> {
    report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["verdict"] != "pass")
        .map(|v| v["check"].as_str().unwrap().to_string())
        .collect()
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(o) => o.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn verify_all_small_range_passes() {
    let (code, report, _) = run(&["verify-all", "--m", "3..7", "--odd"]);
    assert_eq!(report["schema"], "1");
    assert!(failing(&report).is_empty(), "{:?}", failing(&report));
    assert_eq!(code, 0);
    assert!(no_floats(&report));
}

#[test]
fn verify_all_full_range_reports_composite_mersenne() {
    let (code, report, _) = run(&["verify-all", "--m", "3..13", "--odd"]);
    assert_eq!(failing(&report), vec!["m=9/metabolizer_dichotomy", "m=11/metabolizer_dichotomy"]);
    assert_eq!(code, 1);
}

#[test]
fn corrupt_inverse_is_caught() {
    let (code, report, _) = run(&["verify-all", "--m", "3", "--inject-corrupt-pinv"]);
    assert_eq!(code, 1);
    assert!(failing(&report).contains(&"m=3/inverse".to_string()));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify-all", "--m", "4..4", "--odd"],
        vec!["verify-all", "--m", "7..3"],
        vec!["family", "--primes", "5,3"],
        vec!["family", "--primes", "3", "--n", "1"],
        vec!["d-lens", "4", "2"],
        vec!["certify", "--input", "/nonexistent/knot.json"],
        vec!["no-such-command"],
    ] {
        let (code, _, out) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn exit_code_matches_verdicts() {
    for args in [
        vec!["branched-cover", "--m", "5"],
        vec!["branched-cover", "--m", "9"],
        vec!["cobordism", "--m", "7", "--scope", "families"],
        vec!["theorem", "--m", "5"],
        vec!["d-lens", "7", "3"],
        vec!["family", "--primes", "3,5", "--n", "2"],
        vec!["certify", "--example", "2"],
    ] {
        let (code, report, _) = run(&args);
        assert_eq!(code == 0, failing(&report).is_empty(), "{args:?}");
        assert!(no_floats(&report), "{args:?}");
    }
}

#[test]
fn deterministic_across_thread_counts() {
    let a = bin().args(["verify-all", "--m", "3..8"]).env("OBSTRUCTION_LAB_THREADS", "1").output().unwrap();
    let b = bin().args(["verify-all", "--m", "3..8"]).env("OBSTRUCTION_LAB_THREADS", "4").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("obstruction-lab-{}.json", std::process::id()));
    let p = path.display().to_string();
    let (code, _, out) = run(&["theorem", "--m", "3", "--output", &p]);
    assert_eq!(code, 0);
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["command"], "theorem");
    let bound = &report["verdicts"][0]["detail"]["final_bound"];
    assert_eq!((bound["num"].as_str(), bound["den"].as_str()), (Some("-3"), Some("2")));
    std::fs::remove_file(path).ok();
}

#[test]
fn certify_inputs() {
    let (code, report, _) = run(&["certify", "--input", &data("knots/unknot.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["data"]["negative"]["claim"]["level"], "all");

    let (code, report, _) = run(&["certify", "--input", &data("knots/whitehead_of_t.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["data"]["positive"]["claim"]["level"], "all");
    assert!(report["data"]["negative"]["uncertified"].is_string());

    let (code, _, out) = run(&["certify", "--input", &data("knots/missing.json")]);
    assert_eq!(code, 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown fact"));

    let (code, report, _) = run(&["certify", "--example", "4"]);
    assert_eq!(code, 0);
    assert_eq!(report["data"]["negative"]["claim"]["level"], 4);
    assert_eq!(report["data"]["positive"]["claim"]["level"], "all");
}

#[test]
fn family_rows() {
    let (code, report, _) = run(&["family", "--primes", "3,5,7", "--n", "2"]);
    assert_eq!(code, 0);
    let rows = report["data"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert!(row["multiplicity"].is_string());
        assert!(row["x_certificate"][0]["num"].is_string());
    }
    let (code, report, _) = run(&["family", "--primes", "3"]);
    assert_eq!(code, 0);
    assert_eq!(report["data"]["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn invariants_of_trefoil() {
    let (code, report, _) = run(&["invariants", "--seifert", &data("seifert/right_trefoil.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["data"]["signature"]["at_minus_one"], -2);
    let (_, k0, _) = run(&["invariants", "--seifert", &data("seifert/k0.json")]);
    assert_eq!(k0["data"]["blanchfield_metabolizers"].as_array().unwrap().len(), 2);
}
