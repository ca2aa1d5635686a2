//! End-to-end tests of the binary: exit codes, envelope shape, JSON
//! round-trips, and batch mode.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coneangles"))
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).expect("utf8");
    let value = serde_json::from_str(stdout.trim()).expect("single JSON object");
    (code, value)
}

#[test]
fn check_strict_interior_exact() {
    let (code, v) = run(&["check", r#"["1/2","1/2","1/2"]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "check");
    assert_eq!(v["result"]["status"], "strict_interior");
    assert_eq!(v["result"]["holonomy_distance"], "3/2");
    assert_eq!(v["options"]["unit"], "two_pi");
}

#[test]
fn check_boundary() {
    let (code, v) = run(&["check", r#"["1/2","1/2","1"]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "holonomy_boundary");
    assert_eq!(v["result"]["witness_lattice_point"], serde_json::json!([-1, 0, 0]));
}

#[test]
fn check_empty_is_usage_error() {
    let (code, v) = run(&["check", "[]"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
}

#[test]
fn realize_orthogonal_triangle() {
    let (code, v) = run(&["realize", "[0.5,0.5,0.5]", "--seed", "0"]);
    assert_eq!(code, 0);
    let ms = &v["result"]["matrix_set"];
    assert!(ms["closure_residual"].as_f64().unwrap() <= 1e-8);
    assert_eq!(ms["coaxial"], false);
    assert_eq!(v["result"]["axes_parallel"], false);
}

#[test]
fn realize_infeasible_is_domain_error() {
    let (code, v) = run(&["realize", "[0.1,0.3]"]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("holonomy"));
}

#[test]
fn reduce_one_step() {
    let (code, v) = run(&["reduce", "[0.9,0.8,0.7,0.7,0.6]", "--stop-at", "4"]);
    assert_eq!(code, 0);
    let steps = v["result"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0]["sign"], "plus");
    assert_eq!(steps[0]["i"], 0);
    assert_eq!(steps[0]["j"], 1);
}

#[test]
fn plan_sporadic_ray() {
    let (code, v) = run(&["plan", r#"["13/10","7/10","7/10","7/10"]"#]);
    assert_eq!(code, 0);
    let rendered = v["result"]["rendered"].as_str().unwrap();
    assert!(rendered.contains("sporadic-a"), "rendered plan: {rendered}");
    assert_eq!(v["result"]["validation"]["angle_target_matched"], true);
    assert_eq!(v["result"]["validation"]["gauss_bonnet_matched"], true);
}

#[test]
fn plan_response_reparses_into_plan_node() {
    let (code, v) = run(&["plan", r#"["9/10","8/10","7/10","7/10","6/10"]"#]);
    assert_eq!(code, 0);
    // Round-trip: the payload re-parses into the library type identically.
    let plan: coneangles::planner::PlanNode =
        serde_json::from_value(v["result"]["plan"].clone()).expect("plan parses");
    let back = serde_json::to_value(&plan).unwrap();
    assert_eq!(back, v["result"]["plan"]);
}

#[test]
fn cover_quadruple() {
    let (code, v) = run(&[
        "cover",
        "[1.2,0.9,0.5,0.4]",
        "--cube",
        r#"["3/2","1/2","1/2","1/2"]"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["covered"], true);
    assert_eq!(v["options"]["unit"], "pi");
}

#[test]
fn path_between_interior_points() {
    let (code, v) = run(&[
        "path",
        r#"["11/10","11/10","11/10","11/10"]"#,
        r#"["12/5","7/5","7/5","7/5"]"#,
    ]);
    assert_eq!(code, 0);
    let bps = v["result"]["breakpoints"].as_array().unwrap();
    assert!(bps.len() >= 2);
}

#[test]
fn batch_mode_line_per_request() {
    let mut child = bin()
        .arg("batch")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn");
    let input = concat!(
        r#"{"command":"check","input":["1/2","1/2","1/2"]}"#,
        "\n",
        r#"{"command":"check","input":[0.1,0.3],"options":{"tolerance":1e-9}}"#,
        "\n",
        r#"{"command":"realize","input":["3/4","3/4"],"options":{"seed":7}}"#,
        "\n",
    );
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["result"]["status"], "strict_interior");
    assert_eq!(lines[1]["result"]["status"], "holonomy_violated");
    assert_eq!(lines[2]["result"]["matrix_set"]["coaxial"], true);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn batch_malformed_line_exit_two() {
    let mut child = bin()
        .arg("batch")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"this is not json\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scalar_round_trip_exactness() {
    // Exact rationals survive the response bit-identically.
    let (_, v) = run(&["check", r#"["355/113","2/7","9/8"]"#]);
    let d = v["result"]["holonomy_distance"].as_str().unwrap();
    let parsed: coneangles::scalar::Scalar = d.parse().unwrap();
    assert!(parsed.is_exact());
}

#[test]
fn payloads_reparse_into_module_types() {
    let (_, v) = run(&["check", r#"["1/2","1/2","1/2"]"#]);
    let report: coneangles::AdmissibilityReport =
        serde_json::from_value(v["result"].clone()).expect("report parses");
    assert_eq!(serde_json::to_value(&report).unwrap(), v["result"]);

    let (_, v) = run(&["reduce", r#"["9/10","4/5","7/10","7/10","3/5"]"#]);
    let chain: coneangles::merging::ReductionChain =
        serde_json::from_value(v["result"].clone()).expect("chain parses");
    assert_eq!(serde_json::to_value(&chain).unwrap(), v["result"]);

    let (_, v) = run(&[
        "path",
        r#"["11/10","11/10","11/10","11/10"]"#,
        r#"["12/5","7/5","7/5","7/5"]"#,
    ]);
    let path: coneangles::cubes::InteriorPath =
        serde_json::from_value(v["result"].clone()).expect("path parses");
    assert_eq!(serde_json::to_value(&path).unwrap(), v["result"]);
}
