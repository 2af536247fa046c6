use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", self.stdout))
    }
}

fn grade3_with(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_grade3"));
    cmd.args(args).env_remove("GRADE3_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run { code: out.status.code().expect("exited normally"), stdout: String::from_utf8(out.stdout).unwrap() }
}

fn grade3(args: &[&str]) -> Run {
    grade3_with(args, &[])
}

#[test]
fn member_example() {
    let r = grade3(&["member", "--demo", "sl2", "--g", "[[2,1],[1,1]]"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), serde_json::json!({"member": true}));
    let r = grade3(&["member", "--demo", "sl2", "--g", "[[1,-1],[0,1]]"]);
    assert_eq!(r.json()["member"], false);
}

#[test]
fn factor_outside_the_cell_is_a_domain_error() {
    let r = grade3(&["factor", "--demo", "sl2", "--g", "[[0,1],[-1,0]]"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["error"], "NotInOpenCell");
    assert!(r.json()["detail"].is_string());
}

#[test]
fn factor_output_shape() {
    let r = grade3(&["factor", "--demo", "sl2", "--g", "[[2,1],[1,1]]"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    let xp: Vec<f64> = serde_json::from_value(v["x_plus"].clone()).unwrap();
    let xm: Vec<f64> = serde_json::from_value(v["x_minus"].clone()).unwrap();
    assert!((xp[1] - 1.0).abs() < 1e-12 && xp[0].abs() < 1e-12 && xp[2].abs() < 1e-12);
    assert!((xm[2] - 1.0).abs() < 1e-12);
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["g0"]["rows"], 2);
    let r = grade3(&["factor", "--demo", "sl2", "--g", "[[2,1],[1,1]]", "--order", "minus-first"]);
    assert_eq!(r.json()["order"], "minus_zero_plus");
}

#[test]
fn grade_example() {
    let r = grade3(&["grade", "--demo", "sl2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["dims"], serde_json::json!([1, 1, 1]));
}

#[test]
fn output_is_sorted_with_seventeen_digits() {
    let r = grade3(&["grade", "--demo", "sl2"]);
    assert_eq!(
        r.stdout.trim_end(),
        r#"{"dims":[1,1,1],"h":[1.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0]}"#
    );
}

#[test]
fn demo_bundles_feed_back_in() {
    let dir = std::env::temp_dir().join(format!("grade3-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["sl2", "poincare3", "jacobi1", "solvable"] {
        let bundle = grade3(&["demo", name]);
        assert_eq!(bundle.code, 0);
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, &bundle.stdout).unwrap();
        let from_file = grade3(&["grade", "--file", path.to_str().unwrap()]);
        let from_demo = grade3(&["grade", "--demo", name]);
        assert_eq!(from_file.code, 0, "{}", from_file.stdout);
        assert_eq!(from_file.stdout, from_demo.stdout, "{name}");
        let inline = grade3(&["grade", "--input", bundle.stdout.trim()]);
        assert_eq!(inline.stdout, from_demo.stdout);
    }
    std::fs::remove_dir_all(&dir).unwrap();
    let list = grade3(&["demo"]).json();
    assert_eq!(list["demos"].as_array().unwrap().len(), 5);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(grade3(&["frobnicate"]).code, 2);
    let r = grade3(&["member", "--demo", "sl2", "--g", "[[2,1],[1"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"], "MalformedJson");
    let r = grade3(&["grade", "--demo", "nosuch"]);
    assert_eq!((r.code, r.json()["error"].as_str().unwrap()), (2, "UsageError"));
    let r = grade3(&["member", "--demo", "sl2", "--g", "[[1,0,0],[0,1,0],[0,0,1]]"]);
    assert_eq!(r.code, 2);
    let r = grade3(&["modular"]);
    assert_eq!(r.code, 2);
}

#[test]
fn verify_examples() {
    let r = grade3(&["verify", "semigroup", "--seed", "7", "--samples", "1000"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.lines().last().unwrap().starts_with("PASSED"));
    let r = grade3(&["verify", "all", "--seed", "7", "--samples", "20", "--json"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    for suite in ["grading", "cones", "semigroup", "modular", "roots"] {
        assert!(checks.iter().any(|c| c["name"].as_str().unwrap().starts_with(suite)), "{suite}");
    }
    let r = grade3(&["verify", "nosuch"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"], "UnknownSuite");
}

#[test]
fn identical_seeds_give_identical_bytes() {
    let args = ["verify", "all", "--seed", "3", "--samples", "15", "--json"];
    assert_eq!(grade3(&args).stdout, grade3(&args).stdout);
    let roots = ["roots", "--input", r#"{"algebra":"su2+sl2","cartan":[[1,0,0,0,0,0],[0,0,0,0,1,-1]]}"#, "--seed", "9"];
    assert_eq!(grade3(&roots).stdout, grade3(&roots).stdout);
    let other = grade3(&["roots", "--input", roots[2], "--seed", "10"]);
    assert_eq!(other.code, 0);
}

#[test]
fn roots_on_sl2() {
    let v = grade3(&["roots", "--demo", "sl2"]).json();
    assert_eq!(v["types"], serde_json::json!(["noncompact_simple", "noncompact_simple"]));
    assert_eq!(v["c_max"]["kind"], "polyhedral");
    let r = grade3(&["roots", "--input", r#"{"algebra":"sl2","cartan":[[1,0,0]]}"#]);
    assert_eq!((r.code, r.json()["error"].as_str().unwrap()), (1, "NotCartan"));
}

#[test]
fn modular_and_monotone() {
    // V = R·(0.6 + 0.8i): Δ = 1 and U_J = (0.6 + 0.8i)²
    let v = grade3(&["modular", "--input", r#"{"n":1,"basis":[{"re":[0.6],"im":[0.8]}]}"#]).json();
    assert!((v["delta"]["re"][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["j_unitary"]["re"][0].as_f64().unwrap() + 0.28).abs() < 1e-12);
    assert!((v["j_unitary"]["im"][0].as_f64().unwrap() - 0.96).abs() < 1e-12);
    let r = grade3(&["modular", "--input", r#"{"n":2,"basis":[{"re":[1,0]},{"re":[0,0],"im":[1,0]}]}"#]);
    assert_eq!((r.code, r.json()["error"].as_str().unwrap()), (1, "NotStandard"));

    let doc = r#"{"a":[[1,0],[0,1]],"b":[[2,1],[1,2]]}"#;
    let r = grade3(&["monotone", "--input", doc, "--samples", "25"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["trials"], 25);
    let swapped = r#"{"a":[[2,1],[1,2]],"b":[[1,0],[0,1]]}"#;
    let r = grade3(&["monotone", "--input", swapped]);
    assert_eq!((r.code, r.json()["error"].as_str().unwrap()), (1, "PreconditionViolated"));
}

#[test]
fn tolerance_from_environment_and_flag() {
    let g = ["member", "--demo", "sl2", "--g", "[[1,-1],[0,1]]"];
    assert_eq!(grade3(&g).json()["member"], false);
    // h − Ad(g)h is at distance about 1 from the cone
    assert_eq!(grade3_with(&g, &[("GRADE3_TOL", "10")]).json()["member"], true);
    let bad = grade3_with(&g, &[("GRADE3_TOL", "abc")]);
    assert_eq!(bad.code, 2);
    let mut with_flag = g.to_vec();
    with_flag.extend(["--tol", "1e-9"]);
    let r = grade3_with(&with_flag, &[("GRADE3_TOL", "abc")]);
    assert_eq!((r.code, r.json()["member"].as_bool()), (0, Some(false)));
    let r = grade3(&["grade", "--demo", "sl2", "--tol", "-1"]);
    assert_eq!(r.code, 2);
}
