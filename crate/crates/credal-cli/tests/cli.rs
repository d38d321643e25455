//! End-to-end behaviour of the `credal-decide` binary: exit codes, output
//! determinism, format agreement, and scenario-file handling.

use std::fs;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_credal-decide"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success, got {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn builtin_reports_are_deterministic() {
    for args in [
        vec!["minimax", "--builtin", "obsloss", "--p", "0.5"],
        vec!["dilation", "--builtin", "dilation-demo", "--p", "0.3"],
        vec!["beta", "--builtin", "beta-35"],
        vec!["risk", "--builtin", "regret"],
        vec!["simulate", "--builtin", "beta-35", "--runs", "5000", "--seed", "7"],
    ] {
        let first = stdout_of(&args);
        let second = stdout_of(&args);
        assert_eq!(first, second, "non-deterministic output for {args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let base = stdout_of(&["simulate", "--builtin", "beta-35", "--runs", "20000", "--seed", "3"]);
    for threads in ["1", "4"] {
        let out = bin()
            .args(["simulate", "--builtin", "beta-35", "--runs", "20000", "--seed", "3"])
            .env("CREDAL_DECIDE_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        assert_eq!(base, String::from_utf8(out.stdout).unwrap());
    }
}

#[test]
fn json_and_csv_encode_the_same_numbers() {
    let json_text = stdout_of(&["beta", "--builtin", "beta-35"]);
    let csv_text = stdout_of(&["beta", "--builtin", "beta-35", "--format", "csv"]);
    let parsed: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    let row = &parsed["results"]["rows"][0];

    let lines: Vec<&str> = csv_text.lines().collect();
    assert!(lines[0].starts_with("# credal-decide v"));
    let header: Vec<&str> = lines[1].split(',').collect();
    let cells: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(
        header,
        vec!["n", "alpha", "beta", "beta_k0", "beta_k1", "risk_ignore", "risk_bayes", "gap", "relative_gap"]
    );
    for (name, json_key) in [
        ("beta", "beta"),
        ("risk_ignore", "risk_ignore"),
        ("risk_bayes", "risk_bayes"),
        ("gap", "gap"),
        ("relative_gap", "relative_gap"),
    ] {
        let idx = header.iter().position(|h| *h == name).unwrap();
        let csv_value: f64 = cells[idx].parse().unwrap();
        let json_value = row[json_key].as_f64().unwrap();
        assert_eq!(csv_value.to_bits(), json_value.to_bits(), "{name} differs");
    }
}

#[test]
fn beta_builtin_reports_exact_values() {
    let text = stdout_of(&["beta", "--builtin", "beta-35"]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let row = &parsed["results"]["rows"][0];
    assert_eq!(row["n"], 4);
    assert_eq!(row["beta"].as_f64().unwrap(), 0.28125);
    assert!((row["gap"].as_f64().unwrap() - 0.05625).abs() < 1e-9);
}

#[test]
fn minimax_obsloss_matches_expected_rule() {
    let text = stdout_of(&["minimax", "--builtin", "obsloss", "--p", "0.5"]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let results = &parsed["results"];
    assert!((results["global"]["value"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-9);
    let rule = results["global"]["rule"].as_array().unwrap();
    assert!((rule[0][1].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-6);
    assert!((rule[1][1].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-6);
    assert_eq!(results["inconsistent"], serde_json::json!(false));
}

#[test]
fn scenario_file_round_trip() {
    let dir = std::env::temp_dir().join("credal-cli-test");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scenario.json");
    fs::write(
        &path,
        r#"{
            "x_size": 2,
            "y_size": 2,
            "p": 0.3,
            "loss": {"kind": "zero_one"},
            "prior": {"name": "jeffreys"},
            "true_model": {"p": 0.3, "given_y1": [0.5, 0.5], "given_y0": [0.5, 0.5]},
            "n": 2,
            "strategies": ["ignore", "bayes"]
        }"#,
    )
    .unwrap();
    let out_path = dir.join("report.json");
    let text = stdout_of(&[
        "risk",
        "--scenario",
        path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(text.is_empty(), "report should go to --out");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["subcommand"], "risk");
    let rows = report["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!((rows[0]["risk"].as_f64().unwrap() - 0.3).abs() < 1e-9);
}

#[test]
fn unknown_scenario_fields_are_rejected() {
    let dir = std::env::temp_dir().join("credal-cli-test");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    fs::write(&path, r#"{"p": 0.3, "surprise": 1}"#).unwrap();
    let out = run(&["dilation", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: kind=invalid-scenario exit=2"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn missing_required_fields_exit_2() {
    // beta without alpha: no silent default
    let out = run(&["beta", "--builtin", "dilation-demo"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("alpha"), "{err}");
}

#[test]
fn size_cap_exits_3() {
    let dir = std::env::temp_dir().join("credal-cli-test");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("huge.json");
    // 20 observation values at horizon 400 blow the table cap
    let given: Vec<f64> = vec![0.05; 20];
    let scenario = serde_json::json!({
        "x_size": 20,
        "y_size": 2,
        "p": 0.5,
        "loss": {"kind": "asymmetric", "alpha": 1.4},
        "prior": {"name": "uniform"},
        "true_model": {"p": 0.5, "given_y1": given, "given_y0": given},
        "n": 400,
        "strategies": ["bayes"]
    });
    fs::write(&path, serde_json::to_string(&scenario).unwrap()).unwrap();
    let out = run(&["risk", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: kind=size-cap exit=3"), "{err}");
}

#[test]
fn numeric_failure_exits_4() {
    let dir = std::env::temp_dir().join("credal-cli-test");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inf.json");
    // an infinite loss entry is legal in expectations but the minimax game
    // rejects it
    let scenario = serde_json::json!({
        "x_size": 2,
        "y_size": 2,
        "p": 0.5,
        "loss": {"kind": "table", "rows": [[0.0, "inf"], [1.0, 0.0]]}
    });
    fs::write(&path, serde_json::to_string(&scenario).unwrap()).unwrap();
    let out = run(&["minimax", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: kind=numeric-failure exit=4"), "{err}");

    let e = credal_cli::CliError::from(credal_core::CredalError::ConditioningUndefined { x: 1 });
    assert_eq!(e.exit_code(), 4);
}

#[test]
fn builtin_reports_follow_the_envelope_schema() {
    for name in credal_cli::builtins::BUILTIN_NAMES {
        let out = run(&["risk", "--builtin", name]);
        assert!(
            out.status.success(),
            "builtin {name} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let report: serde_json::Value =
            serde_json::from_slice(&out.stdout).expect("valid JSON");
        for key in ["tool", "version", "subcommand", "conventions", "scenario", "results"] {
            assert!(report.get(key).is_some(), "builtin {name} lacks {key}");
        }
        assert_eq!(report["tool"], "credal-decide");
        for key in ["trigger_averaging", "ess_prior", "pay_not_to_know", "rng"] {
            assert!(report["conventions"].get(key).is_some());
        }
    }
    let out = run(&["risk", "--builtin", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}
