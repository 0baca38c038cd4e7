//! End-to-end tests of the `apery` binary: output shapes, exit codes,
//! and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn apery(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apery"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("apery-cli-{name}-{}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn eval_sigma_matches_pi_squared_over_18() {
    let out = apery(&["eval", "sigma(2;[])", "--digits", "40"]);
    let v = stdout_json(&out);
    assert_eq!(v["digits"], 40);
    assert_eq!(v["spec"], "sigma(2;[])");
    // pi^2/18 = 0.548311...
    assert!(v["value"].as_str().unwrap().starts_with("5.48311"));
}

#[test]
fn eval_identity_reports_small_residual() {
    let out = apery(&["eval", "apery2", "--x", "1/2", "--digits", "60"]);
    let v = stdout_json(&out);
    assert_eq!(v["identity"], "apery2");
    assert_eq!(v["params"]["x"], "1/2");
    let residual = v["residual"].as_str().unwrap();
    let exp: i64 = residual.split('e').nth(1).unwrap().parse().unwrap();
    assert!(exp < -50, "residual {residual} too large");
}

#[test]
fn eval_identity_missing_parameter_is_usage_error() {
    let out = apery(&["eval", "apery2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--x"));
}

#[test]
fn eval_unknown_spec_is_usage_error() {
    let out = apery(&["eval", "no-such-identity"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn discover_weight_two_table_format() {
    let out = apery(&["discover", "--max-weight", "2", "--format", "table", "--digits", "60"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[]"));
    assert!(text.lines().any(|l| l.starts_with("[1]") && l.contains("-9")));
    assert!(text.lines().any(|l| l.starts_with("[2]") && l.contains("-45/2")));
    assert!(text.lines().any(|l| l.starts_with("[1,1]") && l.contains("27/2")));
}

#[test]
fn discover_output_is_byte_deterministic() {
    let args = ["discover", "--max-weight", "2", "--digits", "60"];
    let a = apery(&args);
    let b = apery(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["alphas"]["[]"], "3");
    assert_eq!(v["alphas"]["[1,1]"], "27/2");
    assert!(v["excluded"].is_null());
    assert_eq!(v["log"].as_array().unwrap().len(), 3);
}

#[test]
fn pade_fit_recovers_p3() {
    // series of P_3 = 12(4u-1)/(u-4) through u^6
    let coeffs: Vec<String> = {
        // 12(4u-1)/(u-4) = 3 - (45/4) sum_{m>=1} (u/4)^m ... generate exactly
        let mut v = vec!["3".to_string()];
        let mut num = num_rational::Ratio::new(-45i64, 4);
        for _ in 1..=6 {
            v.push(format!("{num}"));
            num /= 4;
        }
        v
    };
    let input = tmp_file("p3", &serde_json::to_string(&coeffs).unwrap());
    let out = apery(&[
        "pade",
        "--input",
        input.to_str().unwrap(),
        "--num-deg",
        "1",
        "--den-deg",
        "1",
    ]);
    let v = stdout_json(&out);
    let f = v["approximant"].as_str().unwrap();
    assert!(f.contains("48*u") && f.contains("-12"), "unexpected form {f}");
    std::fs::remove_file(input).ok();
}

#[test]
fn pade_rejects_malformed_input() {
    let input = tmp_file("bad", "{\"not\": \"an array\"}");
    let out = apery(&["pade", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(input).ok();
}

#[test]
fn pslq_finds_relation_and_exclusion_exits_2() {
    // 2 - 3 + 1 = 0 rescaled: values 2, 3, 1 carry the relation [1, -1, 1]
    let input = tmp_file("rel", r#"["2", "3", "1"]"#);
    let out = apery(&["pslq", "--input", input.to_str().unwrap(), "--digits", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["outcome"], "found");
    std::fs::remove_file(input).ok();

    // pi and e admit no small integer relation with 1
    let pi = "3.14159265358979323846264338327950288419716939937510582097494";
    let e = "2.71828182845904523536028747135266249775724709369995957496697";
    let input = tmp_file("excl", &format!(r#"["1", "{pi}", "{e}"]"#));
    let out = apery(&[
        "pslq",
        "--input",
        input.to_str().unwrap(),
        "--digits",
        "40",
        "--bound",
        "1e6",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["outcome"], "excluded");
    std::fs::remove_file(input).ok();
}

#[test]
fn verify_runs_all_three_protocols() {
    let out = apery(&["verify", "--coeff-order", "3", "--n-random", "2", "--digits", "50"]);
    let v = stdout_json(&out);
    assert_eq!(v["special_points"].as_array().unwrap().len(), 5);
    assert_eq!(v["random_points"].as_array().unwrap().len(), 2);
}

#[test]
fn prove_checks_pass_for_small_n() {
    let out = apery(&["prove", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
}

#[test]
fn out_flag_writes_file_instead_of_stdout() {
    let path = std::env::temp_dir().join(format!("apery-cli-out-{}", std::process::id()));
    let out = apery(&[
        "eval",
        "sigma(2;[])",
        "--digits",
        "35",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.ends_with('\n'));
    let v: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["digits"], 35);
    std::fs::remove_file(path).ok();
}
