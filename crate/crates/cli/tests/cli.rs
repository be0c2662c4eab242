//! CLI behavior beyond the acceptance examples: flag validation, the
//! hypothesis override, thread-budget resolution, and output determinism.

use std::process::{Command, Output};

fn base_command() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fanodeg"));
    cmd.env_remove("FANO_THREADS");
    cmd
}

fn fanodeg(args: &[&str]) -> Output {
    base_command().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_str(std::str::from_utf8(&output.stdout).unwrap()).unwrap()
}

#[test]
fn json_keys_appear_in_the_documented_order() {
    let out = fanodeg(&["--k", "1", "--d", "3", "--n", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let raw = String::from_utf8(out.stdout).unwrap();
    let order = [
        "\"k\"",
        "\"d\"",
        "\"n\"",
        "\"delta\"",
        "\"degree\"",
        "\"method\"",
        "\"per_method_results\"",
        "\"trials\"",
        "\"trials_agreed\"",
        "\"elapsed_ms\"",
    ];
    let mut last = 0;
    for key in order {
        let at = raw[last..].find(key).unwrap_or_else(|| panic!("{key} missing or out of order"));
        last += at;
    }
}

#[test]
fn method_all_is_the_default_and_includes_vdw_only_when_applicable() {
    let lines = stdout_json(&fanodeg(&["--k", "1", "--d", "3", "--n", "3", "--json"]));
    assert_eq!(lines["method"], "all");
    let methods: Vec<&String> = lines["per_method_results"]
        .as_object()
        .unwrap()
        .keys()
        .collect();
    assert_eq!(methods, ["bott", "dm", "vdw"]);

    let planes = stdout_json(&fanodeg(&["--k", "2", "--d", "3", "--n", "6", "--json"]));
    let methods: Vec<&String> = planes["per_method_results"]
        .as_object()
        .unwrap()
        .keys()
        .collect();
    assert_eq!(methods, ["bott", "dm"]);
    assert_eq!(planes["degree"], "2835");
}

#[test]
fn forced_hypothesis_reports_the_formula_value_with_a_warning() {
    let out = fanodeg(&[
        "--k", "2", "--d", "2", "--n", "4", "--force-hypothesis", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["degree"], "0");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("Fano-scheme interpretation not guaranteed"),
        "stderr was: {stderr}"
    );
}

#[test]
fn explicit_weights_are_validated() {
    let wrong_length = fanodeg(&["--k", "1", "--d", "3", "--n", "3", "--weights", "1,2,3"]);
    assert_eq!(wrong_length.status.code(), Some(2));

    let not_an_integer = fanodeg(&["--k", "1", "--d", "3", "--n", "3", "--weights", "1,2,3,x"]);
    assert_eq!(not_an_integer.status.code(), Some(2));

    let repeated = fanodeg(&["--k", "1", "--d", "3", "--n", "3", "--weights", "1,2,2,4"]);
    assert_eq!(repeated.status.code(), Some(2));
    let stderr = String::from_utf8(repeated.stderr).unwrap();
    assert!(stderr.contains("distinct"), "stderr was: {stderr}");

    let good = fanodeg(&[
        "--k", "1", "--d", "3", "--n", "3", "--weights", " 3, -1, 4, 7 ", "--json",
    ]);
    assert_eq!(good.status.code(), Some(0));
    assert_eq!(stdout_json(&good)["degree"], "27");
}

#[test]
fn vdw_is_rejected_off_the_line_locus() {
    let out = fanodeg(&["--k", "2", "--d", "3", "--n", "6", "--method", "vdw"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("method vdw requires"), "stderr was: {stderr}");
}

#[test]
fn trials_must_be_positive() {
    let out = fanodeg(&["--k", "1", "--d", "3", "--n", "3", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_thread_budget_is_honored_only_without_the_flag() {
    let via_env = base_command()
        .args(["--k", "1", "--d", "3", "--n", "3", "--json"])
        .env("FANO_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(0));
    assert_eq!(stdout_json(&via_env)["degree"], "27");

    let bad_env = base_command()
        .args(["--k", "1", "--d", "3", "--n", "3"])
        .env("FANO_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));

    let flag_wins = base_command()
        .args(["--k", "1", "--d", "3", "--n", "3", "--threads", "2", "--json"])
        .env("FANO_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn reports_are_deterministic_for_a_fixed_request_and_seed() {
    let args = [
        "--k", "1", "--d", "3", "--n", "4", "--weight-strategy", "random", "--seed", "11",
        "--trials", "3", "--json",
    ];
    let mut first = stdout_json(&fanodeg(&args));
    let mut second = stdout_json(&fanodeg(&args));
    // Wall-clock timings are reported but excluded from determinism.
    first.as_object_mut().unwrap().remove("elapsed_ms");
    second.as_object_mut().unwrap().remove("elapsed_ms");
    assert_eq!(first, second);
}

#[test]
fn text_and_json_modes_report_the_same_numbers() {
    let text = fanodeg(&["--k", "1", "--d", "5", "--n", "4"]);
    assert_eq!(text.status.code(), Some(0));
    let rendered = String::from_utf8(text.stdout).unwrap();
    let json = stdout_json(&fanodeg(&["--k", "1", "--d", "5", "--n", "4", "--json"]));
    assert!(rendered.contains("degree = 2875"));
    assert!(rendered.contains("delta  = 0"));
    assert_eq!(json["degree"], "2875");
    assert_eq!(json["delta"], serde_json::json!(0));
    for (method, value) in json["per_method_results"].as_object().unwrap() {
        let value = value.as_str().unwrap();
        assert!(
            rendered.contains(&format!("{method}: {value}")),
            "text mode missing {method}: {value}\n{rendered}"
        );
    }
}

#[test]
fn large_degrees_survive_as_strings() {
    let out = fanodeg(&["--k", "1", "--d", "9", "--n", "6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let raw = String::from_utf8(out.stdout).unwrap();
    assert!(raw.contains("\"degree\":\"305093061\""), "raw: {raw}");
    let report: serde_json::Value = serde_json::from_str(&raw).unwrap();
    assert!(report["degree"].is_string());
}
