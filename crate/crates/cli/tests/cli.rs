use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betamatch")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.stderr.is_empty(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn decimal(v: &Value) -> f64 {
    v["decimal"].as_str().unwrap().parse().unwrap()
}

#[test]
fn validate_exit_codes() {
    let o = run(&["validate", "(100) (01)"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["linearizable"], true);
    assert_eq!(v["shift_class"], "SFT");

    let o = run(&["validate", "(100011011) (011100)"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["linearizable"], false);

    let o = run(&["validate", "(10 (01"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
}

#[test]
fn params_examples() {
    let v = json(&run(&["params", "100(10) 011(10)"]));
    assert!((decimal(&v["beta"]) - 1.61803).abs() < 1e-4);
    assert!((decimal(&v["alpha"]) - 0.23607).abs() < 1e-4);

    let v = json(&run(&["params", "(1000) (01)"]));
    assert!((decimal(&v["beta"]) - 1.46557).abs() < 1e-4);
    assert!((decimal(&v["alpha"]) - 0.1288).abs() < 1e-4);

    let v = json(&run(&["params", "(100011011) (011100)", "--linearize"]));
    assert_eq!(v["pair"], "(100) (011)");
    assert!((decimal(&v["beta"]) - 1.618).abs() < 1e-3);
    assert!((decimal(&v["alpha"]) - 0.191).abs() < 1e-3);
}

#[test]
fn params_without_root_exits_3() {
    // The determinant numerator of ((10)^∞, (01)^∞) is 1 − t.
    let o = run(&["params", "(10) (01)"]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&run(&["params", "(100011011) (011100)"])), 1);
}

#[test]
fn matching_examples() {
    let v = json(&run(&["matching", "(100) (01)"]));
    assert_eq!(v["report"]["time"], 5);
    assert_eq!(v["interval"]["singleton"], true);

    let v = json(&run(&["matching", "(10001) (01110)"]));
    assert_eq!(v["report"]["time"], 4);
    assert_eq!(v["interval"]["left"]["closed"], false);
    assert_eq!(v["interval"]["right"]["closed"], false);
    assert_eq!(v["interval"]["left"]["class"], "SoficNotMatching");
    assert_eq!(v["interval"]["right"]["class"], "SoficNotMatching");

    let o = run(&["matching", "100(01) 011(10)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["report"]["has_matching"], false);

    for method in ["inequalities", "extension"] {
        let v = json(&run(&["matching", "(10) (0111)", "--method", method]));
        assert_eq!(v["interval"]["left"]["closed"], true);
        assert_eq!(v["interval"]["right"]["closed"], false);
    }
}

#[test]
fn approx_examples() {
    let v = json(&run(&[
        "approx",
        "100011101101101101011(01) 011101101101101101011(01)",
        "--eps",
        "1e-2",
    ]));
    assert_eq!(v["k"], 18);
    assert_eq!(v["rejected"], serde_json::json!([10, 13, 16]));

    let v = json(&run(&["approx", "(100) (01)", "--eps", "1/100"]));
    assert_eq!(v["k"], Value::Null);
    assert_eq!(v["output"], "(100) (01)");

    let v = json(&run(&["approx", "100(10) 011(10)", "--eps", "1e-6"]));
    assert_eq!(v["within_bound"], true);
    assert_eq!(v["same_matching"], true);
    let bound: f64 = v["bound"].as_str().unwrap().parse().unwrap();
    assert!(bound <= 1e-6);

    assert_eq!(code(&run(&["approx", "100(01) 011(10)", "--eps", "1e-2"])), 4);
}

#[test]
fn scan_examples() {
    let v = json(&run(&["scan", "--beta-poly", "t^3-t^2-t-1", "--grid", "100"]));
    assert_eq!(v["intervals"].as_array().unwrap().len(), 1);
    assert_eq!(v["multinacci"], true);

    let v = json(&run(&["scan", "--beta-poly", "t^3-2t-2"]));
    assert!(v["intervals"].as_array().unwrap().is_empty());
    assert_eq!(v["obstructed"], true);

    let o = run(&["scan", "--beta-poly", "t^2-5"]);
    assert_eq!(code(&o), 1);

    let o = run(&["scan", "--beta-poly", "t^3-t^2-1", "--grid", "100", "--output", "csv"]);
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("alpha_lo,alpha_hi,left_closed,right_closed,matching_time\n"));
    assert!(csv.lines().count() >= 5);

    let o = run(&["scan", "--beta-poly", "t^3-t^2-1", "--grid", "50", "--output", "svg"]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("<svg"));
}

#[test]
fn blocks_respect_ceiling() {
    let v = json(&run(&["blocks", "(100) (01)", "--max-len", "6"]));
    assert_eq!(v["counts"], serde_json::json!([2, 3, 4, 5, 7, 9]));
    assert_eq!(code(&run(&["blocks", "(100) (01)", "--max-len", "30"])), 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["matching", "(10) (0111)"][..],
        &["scan", "--beta-poly", "t^3-t^2-1", "--grid", "80"][..],
        &["params", "(1000) (01)", "--precision-bits", "200"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(a.stderr.is_empty());
    }
}
