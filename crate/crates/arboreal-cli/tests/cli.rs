//! End-to-end tests of the command surface: exit codes, JSON round-trips,
//! and byte-level determinism.

use std::process::Command;

fn arboreal(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_arboreal"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn run_in_process(args: &[&str]) -> (i32, String) {
    let mut buf = Vec::new();
    let code = arboreal_cli::run(args.iter().map(|s| s.to_string()).collect(), &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

#[test]
fn analyze_octic_membership() {
    let (code, stdout, _) = arboreal(&[
        "analyze",
        "--poly",
        "x^8-44x^6+567x^4-2660x^2+3564",
        "--kind",
        "lambda",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("certificate: {0: 14850, 3: 4945, 7: 513, 10: 2274, 26: 166}"));
    assert!(stdout.contains("68231 vertices"));
}

#[test]
fn analyze_coefficient_list_input() {
    let (code, stdout, _) = arboreal(&[
        "analyze",
        "--coeffs",
        "3564,0,-2660,0,567,0,-44,0,1",
        "--kind",
        "lambda",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("68231 vertices"));
}

#[test]
fn analyze_rejects_non_integer_coefficients() {
    let (code, stdout, _) = arboreal(&["analyze", "--poly", "x^2 - 0.5"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("error"));
}

#[test]
fn analyze_obstructed_cubic() {
    let (code, stdout, _) = arboreal(&["analyze", "--poly", "x^3-5x^2+6x-1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("not of arboreal height <= 2"));
    assert!(stdout.contains("mod-2"));
}

#[test]
fn analyze_unknown_when_budget_starves_one_side() {
    // With max-k below the largest squared root no right-interlacing set
    // exists, so only positive elements appear and the verdict is open.
    let (code, stdout, _) = arboreal(&[
        "analyze",
        "--poly",
        "x^4-44x^3+567x^2-2660x+3564",
        "--max-k",
        "10",
    ]);
    assert_eq!(code, 2);
    assert!(stdout.contains("unknown"));
}

#[test]
fn trapped_quartic_membership_via_combination() {
    let (code, stdout, _) = arboreal(&[
        "analyze",
        "--poly",
        "x^4-49x^3+632x^2-777x+1",
        "--kind",
        "lambda-squared",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("assembly: 195 * 12096 + 9323 * (-253) = 1"));
}

#[test]
fn certify_verify_round_trip() {
    let dir = std::env::temp_dir().join("arboreal-cli-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let cert_path = dir.join("cert.json");
    let (code, _, _) = arboreal(&[
        "certify",
        "--poly",
        "x^8-44x^6+567x^4-2660x^2+3564",
        "--kind",
        "lambda",
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = arboreal(&["verify-cert", "--cert", cert_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verified"));
    // verbatim acceptance: the JSON file parses and verifies true
    let (code, json_out, _) = arboreal(&[
        "verify-cert",
        "--cert",
        cert_path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    assert_eq!(v["verified"], serde_json::Value::Bool(true));
}

#[test]
fn bad_certificate_fails_verification() {
    let dir = std::env::temp_dir().join("arboreal-cli-badcert");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"F": "x^2 - 3x + 1", "a": {"0": 2, "1": 1}, "verified": true}"#,
    )
    .unwrap();
    let (code, stdout, _) = arboreal(&["verify-cert", "--cert", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("NOT verified"));
}

#[test]
fn obstruct_exit_codes() {
    let (code, stdout, _) = arboreal(&["obstruct", "--poly", "x^3-5x^2+6x-1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("mod-2"));
    // a certifiable quadratic has no obstruction: inconclusive scan
    let (code, stdout, _) = arboreal(&["obstruct", "--poly", "x^2-3x+1"]);
    assert_eq!(code, 2);
    assert!(stdout.contains("no obstruction"));
    // zeta48 quartic reports the dedicated 3-adic obstruction
    let (code, stdout, _) = arboreal(&["obstruct", "--poly", "x^4-8x^3+20x^2-16x+1", "--json"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("zeta48_three_adic"));
}

#[test]
fn cyclo_single_and_table() {
    let (code, stdout, _) = arboreal(&["cyclo", "--m", "48", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["verdict"], "not_in_a2");
    assert_eq!(v["obstruction"]["kind"], "zeta48_three_adic");
    assert_eq!(v["obstruction"]["y0"], "1/6");

    let (code, stdout, _) = arboreal(&["cyclo", "--max", "12"]);
    assert_eq!(code, 0);
    assert!(stdout.lines().count() >= 13);
    assert!(stdout.contains("in A2"));
}

#[test]
fn tree_subcommands() {
    let (code, stdout, _) = arboreal(&["tree", "build", "--branches", "0:2,4:4,8:2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("vertices: 41"));

    let (code, stdout, _) = arboreal(&["tree", "charpoly", "--branches", "0:1,1:1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "x^4 - 3x^2 + 1");

    let (code, stdout, _) = arboreal(&["tree", "export", "--branches", "1:1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0 1\n1 2\n");

    let (code, stdout, _) = arboreal(&[
        "tree",
        "search",
        "--poly",
        "x^2-3x+1",
        "--max-vertices",
        "10",
        "--max-k",
        "5",
        "--excess",
        "0",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("{0: 1, 1: 1}"));
}

#[test]
fn zeta48_values() {
    let (code, stdout, _) = arboreal(&["zeta48", "--k-max", "20", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["y0"], "1/6");
    assert_eq!(v["detM"], 3);
    assert_eq!(v["all_three_integral"], serde_json::Value::Bool(true));
}

#[test]
fn scale_subcommand() {
    let (code, stdout, _) = arboreal(&["scale", "--poly", "x^3-5x^2+6x-1", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["D"], 2);
    assert_eq!(v["scaled_F"], "x^3 - 20x^2 + 96x - 64");
}

#[test]
fn byte_identical_reruns() {
    let args = ["analyze", "--poly", "x^4-49x^3+632x^2-777x+1", "--json"];
    let (c1, out1, _) = arboreal(&args);
    let (c2, out2, _) = arboreal(&args);
    assert_eq!(c1, c2);
    assert_eq!(out1, out2);
    // and unchanged under a different thread cap
    let out3 = Command::new(env!("CARGO_BIN_EXE_arboreal"))
        .args(args)
        .env("ARBOREAL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out1, String::from_utf8_lossy(&out3.stdout));
}

#[test]
fn usage_errors_and_help() {
    let (code, _, _) = arboreal(&["analyze"]); // missing input source
    assert_eq!(code, 1);
    let (code, stdout) = run_in_process(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("analyze"));
    assert!(stdout.contains("zeta48"));
}
