use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latzeta")).args(args).env_remove("LATZETA_MAX_N").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_all_classes_passes() {
    let o = run(&["verify", "--disc", "-23", "--max", "300", "--all-classes"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(": ok")).count(), 6);
}

#[test]
fn euler_reports_failure_for_minus_23() {
    let o = run(&["euler", "--disc", "-23", "--max", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("fails"));
    assert!(text.contains("witness: m=6"));
    assert!(text.contains("Cl ≅ ℤ/3"));
}

#[test]
fn classgroup_json_for_minus_20() {
    let o = run(&["classgroup", "--disc", "-20", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["h"], 2);
    let classes: Vec<(i64, i64, i64)> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["a"].as_i64().unwrap(), c["b"].as_i64().unwrap(), c["c"].as_i64().unwrap()))
        .collect();
    assert_eq!(classes, vec![(1, 0, 5), (2, 2, 3)]);
}

#[test]
fn verify_json_round_trips() {
    let o = run(&["verify", "--disc", "-20", "--form", "2,2,3", "--max", "50", "--mode", "gl", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap(), text.trim_end());
    for key in ["disc", "form", "mode", "N", "coeffs_formula", "coeffs_brute", "mismatches", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["mode"], "gl");
    assert_eq!(v["coeffs_formula"], v["coeffs_brute"]);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_csv_columns() {
    let o = run(&["verify", "--disc", "-7", "--max", "10", "--mode", "sl", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,a_formula,a_brute,match");
    assert_eq!(lines.len(), 11);
    assert!(lines[1..].iter().all(|l| l.ends_with(",1")));
}

#[test]
fn usage_and_domain_errors_exit_2() {
    for args in [
        &["verify", "--disc", "-21"][..],
        &["verify", "--disc", "-36"],
        &["brute", "--disc", "-20", "--form", "1,1,6"],
        &["brute", "--disc", "-20", "--form", "1,0"],
        &["formula", "--disc", "-20", "--form", "2,0,10"],
        &["verify", "--disc", "-7", "--max", "0"],
        &["bogus"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn max_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_latzeta"))
        .args(["formula", "--disc", "-7", "--max", "50"])
        .env("LATZETA_MAX_N", "40")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("40"));
}

#[test]
fn brute_and_formula_tables_agree() {
    let a = run(&["brute", "--disc", "-40", "--form", "2,0,5", "--max", "40", "--json"]);
    let b = run(&["formula", "--disc", "-40", "--form", "2,0,5", "--max", "40", "--json", "--parallel"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn localfactor_and_residue() {
    let o = run(&["localfactor", "--disc", "-7", "--p", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a_3^2 = 13"));
    let o = run(&["residue", "--disc", "-4", "--max", "100", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["report"]["residue"].as_f64().unwrap() > 0.0);
}
