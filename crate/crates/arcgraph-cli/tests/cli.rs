//! End-to-end checks against the compiled binary: exit codes, JSON
//! shape, determinism, and environment-variable budget fallbacks.

use std::process::{Command, Output};

fn arcgraph(args: &[&str]) -> Output {
    arcgraph_with_env(args, &[])
}

fn arcgraph_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_arcgraph"));
    for key in [
        "ARCGRAPH_K_MAX",
        "ARCGRAPH_DP_CAP",
        "ARCGRAPH_MAX_WITNESS_DIGITS",
        "ARCGRAPH_INPUT_CAP",
    ] {
        cmd.env_remove(key);
    }
    for (key, value) in env {
        cmd.env(key, value);
    }
    cmd.args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn without_timing(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|line| !line.contains("elapsed_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn refuted_arc_exits_one_with_certificate() {
    let out = arcgraph(&[
        "arc", "--g", "sb", "--b", "10", "33", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    assert_eq!(report["verdict"]["kind"], "refuted");
    assert_eq!(
        report["verdict"]["certificate"]["type"],
        "modular-exhaustion"
    );
    assert_eq!(report["command"], "arc");
    assert_eq!(report["function"]["name"], "sb");
    assert_eq!(report["function"]["b"], 10);
    assert_eq!(report["inputs"][0], "33");
}

#[test]
fn witness_round_trips_through_verify() {
    let out = arcgraph(&[
        "witness", "--g", "sb", "--b", "10", "3", "6", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["verdict"]["kind"], "proven");
    let witness = report["verdict"]["witness"]["decimal"]
        .as_str()
        .expect("witness decimal present")
        .to_string();
    assert_eq!(witness, "33");

    let check = arcgraph(&[
        "arc", "--g", "sb", "--b", "10", "3", "6", "--verify", &witness,
    ]);
    assert_eq!(check.status.code(), Some(0));
    let reject = arcgraph(&["arc", "--g", "sb", "--b", "10", "3", "6", "--verify", "35"]);
    assert_eq!(reject.status.code(), Some(1));
}

#[test]
fn frobenius_regression_vector() {
    let out = arcgraph(&["frobenius", "--g", "tau", "8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["verdict"]["kind"], "frobenius");
    assert_eq!(report["verdict"]["value"], "3");
}

#[test]
fn identical_invocations_are_byte_identical_modulo_timing() {
    let args = ["out", "--g", "sb", "--b", "10", "7", "--format", "json"];
    let first = arcgraph(&args);
    let second = arcgraph(&args);
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(without_timing(&first), without_timing(&second));
    assert!(!without_timing(&first).is_empty());
}

#[test]
fn usage_errors_exit_64_and_explain() {
    let out = arcgraph(&["conquer"]);
    assert_eq!(out.status.code(), Some(64));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("conquer"));
    assert!(stderr.contains("usage:"));

    let out = arcgraph(&["arc", "--g", "sb", "33", "3"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing --b"));
}

#[test]
fn selftest_exits_zero() {
    let out = arcgraph(&["selftest", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    let checks = report["verdict"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 10);
    assert!(checks.iter().all(|c| c["ok"] == true));
}

#[test]
fn environment_budgets_apply_and_flags_win() {
    let out = arcgraph_with_env(
        &["eval", "--g", "tau", "8", "--format", "json"],
        &[("ARCGRAPH_K_MAX", "13")],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["budget"]["oracle_k_max"], 13);

    let out = arcgraph_with_env(
        &[
            "eval", "--g", "tau", "8", "--format", "json", "--k-max", "29",
        ],
        &[("ARCGRAPH_K_MAX", "13")],
    );
    assert_eq!(json_of(&out)["budget"]["oracle_k_max"], 29);
}

#[test]
fn text_format_is_the_default() {
    let out = arcgraph(&["eval", "--g", "tau", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("value: 4"), "{stdout}");
    assert!(serde_json::from_str::<serde_json::Value>(&stdout).is_err());
}

#[test]
fn unknown_exit_code_is_two() {
    let out = arcgraph(&["arc", "--g", "sb", "--b", "10", "33", "9", "--dp-cap", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exhaustion_exits_65() {
    let out = arcgraph(&["eval", "--g", "tau", "101", "--input-cap", "100"]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn json_report_round_trips_losslessly() {
    for args in [
        vec!["arc", "--g", "sb", "--b", "10", "33", "3"],
        vec!["witness", "--g", "sb", "--b", "10", "3", "6"],
        vec!["witness", "--g", "tau", "6", "8"],
        vec!["out", "--g", "sb", "--b", "10", "7"],
        vec!["frobenius", "--g", "tau", "8"],
        vec!["friends", "--g", "omega", "2", "3"],
        vec!["prefix", "--g", "sb", "--b", "10", "3", "9"],
    ] {
        let mut full = args.clone();
        full.extend(["--format", "json"]);
        let out = arcgraph(&full);
        let parsed = json_of(&out);
        let reserialized = serde_json::to_value(
            serde_json::from_value::<arcgraph_cli::Report>(parsed.clone()).unwrap(),
        )
        .unwrap();
        assert_eq!(parsed, reserialized, "args: {args:?}");
    }
}
