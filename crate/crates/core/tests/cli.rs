use std::process::{Command, Output};

use serde_json::Value;

fn theta_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta-lab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn member_of_theta12() {
    let out = theta_lab(&["congruence", "member", "--group", "theta12", "--gamma", "0,-1,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["member"], Value::Bool(true));
}

#[test]
fn weil_t_is_diag_one_i() {
    let out = theta_lab(&["weilrep", "--m", "2", "--mp", "1,1,0,1:+"]);
    assert_eq!(out.status.code(), Some(0));
    let m = &json(&out)["matrix"];
    assert_eq!(m, &serde_json::json!([["1+0i", "0+0i"], ["0+0i", "0+1i"]]));
}

#[test]
fn s_squared_is_minus_one_on_the_principal_branch() {
    let out = theta_lab(&["mp", "mul", "--left", "0,-1,1,0:+", "--right", "0,-1,1,0:+"]);
    assert_eq!(json(&out)["product"], "(-1,0,0,-1:+)");
}

#[test]
fn discriminant_of_s() {
    let out = theta_lab(&["discriminant", "--g", "1", "--parity", "even", "--gamma", "0,3,1,0"]);
    assert_eq!(json(&out)["lambda"], serde_json::json!({"num": 1, "den": 4}));
}

#[test]
fn congruence_index_and_des() {
    assert_eq!(json(&theta_lab(&["congruence", "index", "--group", "gamma0", "--n", "4"]))["index"], 6);
    let des = json(&theta_lab(&["congruence", "des", "--m", "2", "--gamma", "1,1,4,5"]));
    assert_eq!(des["des"], serde_json::json!([1, 2, 2, 5]));
    let member = json(&theta_lab(&["congruence", "member", "--group", "gamma-m-2m", "--m", "2", "--gamma", "1,4,0,1"]));
    assert_eq!(member["member"], Value::Bool(true));
}

#[test]
fn heisenberg_and_schrodinger_commands() {
    let s = json(&theta_lab(&["heisenberg", "splittings", "--type", "2,2"]));
    assert_eq!(s["count"], 4);
    let u = json(&theta_lab(&["heisenberg", "aut", "--type", "2", "--stabilizer-u0sym"]));
    assert!(u["count"].as_u64().unwrap() > 0);
    let m = json(&theta_lab(&["schrodinger", "matrix", "--type", "4", "--element", "1/4,3,1"]));
    assert_eq!(m["matrix"].as_array().unwrap().len(), 4);
}

#[test]
fn theta_eval_and_transform() {
    let out = theta_lab(&["theta", "eval", "--m", "4", "--tau", "0.3+1.1i", "--tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["values"].as_array().unwrap().len(), 4);
    let out =
        theta_lab(&["verify", "transform", "--m", "4", "--mp", "0,-1,1,0:+", "--tau", "0.3+1.1i", "--tol", "1e-9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], Value::Bool(true));
}

#[test]
fn failing_check_exits_one() {
    let out =
        theta_lab(&["verify", "transform", "--m", "4", "--mp", "0,-1,1,0:+", "--tau", "0.3+1.1i", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], Value::Bool(false));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["mp", "mul", "--left", "1,2,3", "--right", "0,-1,1,0:+"][..],
        &["theta", "eval", "--m", "4", "--tau", "0.3+0.01i"],
        &["congruence", "member", "--group", "gamma0", "--n", "4", "--gamma", "1,1,1,1"],
        &["frobnicate"],
        &["weilrep", "--m", "3", "--mp", "1,1,0,1:+"],
        &["heisenberg", "descent", "--type", "4,4"],
    ] {
        let out = theta_lab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn quick_suite_passes_and_is_ordered() {
    let out = Command::new(env!("CARGO_BIN_EXE_theta-lab"))
        .args(["verify", "suite", "--level", "quick"])
        .env("THETA_LAB_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["seed"], 11);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == Value::Bool(true)));
    assert_eq!(checks[0]["check_id"], "transformation_law");
}

#[test]
fn output_is_deterministic() {
    let args = ["theta", "eval", "--m", "6", "--tau", "-0.4+0.8i"];
    assert_eq!(theta_lab(&args).stdout, theta_lab(&args).stdout);
}
