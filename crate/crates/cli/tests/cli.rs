use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fusionkit"))
        .args(args)
        .env_remove("FUSIONKIT_TOL")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("error JSON on stderr")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("fusionkit-cli-{}-{name}", std::process::id()))
}

#[test]
fn qdim_ising_rows() {
    let out = run(&["qdim", "ising"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let sigma = &rows[2];
    assert!((sigma["qdim"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(sigma["tag"]["kind"], "TwoCosPiOver");
    assert_eq!(sigma["tag"]["n"], 4);
    assert_eq!(rows[1]["simple_current"], true);
    assert_eq!(sigma["simple_current"], false);
}

#[test]
fn family_dump_and_validation() {
    let out = run(&["family", "minimal:2:5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["datum"]["labels"].as_array().unwrap().len(), 2);
    assert_eq!(v["datum"]["weights"][1]["num"], -1);
    assert_eq!(v["datum"]["weights"][1]["den"], 5);
    assert_eq!(v["passed"], true);
}

#[test]
fn input_errors_exit_two() {
    let out = run(&["family", "minimal:2:4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "NotCoprime");
    let out = run(&["qdim", "e8:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "Parse");
    let out = run(&["galois", "builtin:M11"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["charlimit", "l1:x", "l1:0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["qdim", "ising", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "InvalidInput");
    let out = run(&["series", "l1:1", "--trunc", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_failures_exit_one() {
    // no floating-point S-matrix meets a 1e-300 tolerance
    let out = run(&["family", "sl2:5", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fusionkit"))
        .args(["family", "sl2:5"])
        .env("FUSIONKIT_TOL", "1e-300")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["validation"]["tolerance"], 1e-300);
}

#[test]
fn fusion_table() {
    let out = run(&["fusion", "ising"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let products = v["products"].as_array().unwrap();
    let sigma_sq = products
        .iter()
        .find(|p| p["left"] == "1/16" && p["right"] == "1/16")
        .unwrap();
    assert_eq!(sigma_sq["product"], "0 + 1/2");
    assert_eq!(v["axioms"]["associative"], true);
    let csv = run(&["fusion", "ising", "--format", "csv"]);
    assert!(String::from_utf8_lossy(&csv.stdout).starts_with("i,j,label_i,label_j,product\n"));
}

#[test]
fn global_and_classify() {
    let v = json(&run(&["global", "ising"]));
    assert!((v["value"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    let out = run(&["classify", "minimal:3:5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["labels"].as_array().unwrap().len(), 4);
}

#[test]
fn charlimit_three_routes() {
    let out = run(&["charlimit", "l1:2", "l1:0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let est = v["estimates"].as_array().unwrap();
    assert_eq!(est.len(), 3);
    for e in est {
        assert!((e["value"].as_f64().unwrap() - 3.0).abs() < 0.05, "{e}");
        assert_eq!(e["converged"], true);
    }
    let v = json(&run(&["charlimit", "generic", "l1:0"]));
    assert!(v["diverging"].as_array().unwrap().iter().all(|d| d == true));
    let v = json(&run(&["charlimit", "a1:half", "a1", "--trunc", "2000"]));
    assert!((v["estimates"][1]["value"].as_f64().unwrap() - 1.0).abs() < 0.05);
    let csv = run(&["charlimit", "heis:1", "heis:1", "--format", "csv"]);
    assert!(String::from_utf8_lossy(&csv.stdout).starts_with("route,parameter,sample,estimate\n"));
}

#[test]
fn galois_builtin_and_file() {
    let v = json(&run(&["galois", "builtin:S3"]));
    assert_eq!(v["subgroup_count"], 6);
    assert_eq!(v["galois_count"], 3);
    let path = temp_path("z3.txt");
    std::fs::write(&path, "3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let v = json(&run(&["galois", path.to_str().unwrap()]));
    assert_eq!(v["subgroup_count"], 2);
    std::fs::write(&path, "3\n0 1 2\n1 2 0\n2 1 0\n").unwrap();
    let out = run(&["galois", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn lattice_file_family() {
    let path = temp_path("a1.json");
    std::fs::write(&path, r#"{"gram": [[2]], "cosets": [[[0, 1]], [[1, 2]]]}"#).unwrap();
    let spec = format!("lattice:{}", path.display());
    let out = run(&["qdim", &spec]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    assert_eq!(rows.as_array().unwrap().len(), 2);
    std::fs::write(&path, r#"{"gram": [[2]], "cosets": [[[0, 1]]]}"#).unwrap();
    let out = run(&["qdim", &spec]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "WrongCosetCount");
    std::fs::remove_file(&path).ok();
    assert_eq!(run(&["qdim", "lattice:A2"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["family", "sl2:4"][..],
        &["classify", "minimal:2:7"],
        &["charlimit", "l1:3", "l1:0"],
        &["galois", "builtin:A4"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let path = temp_path("qdim.csv");
    let out = run(&[
        "qdim",
        "sl2:2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("label,weight,qdim,tag,simple_current\n"));
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_file(&path).ok();
}

#[test]
fn series_csv() {
    let out = run(&["series", "l1:0", "--trunc", "6", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let coeffs: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    // p(n) - p(n - 1)
    assert_eq!(coeffs, ["1", "0", "1", "1", "2", "2", "4"]);
}

#[test]
fn fixtures_table() {
    let out = run(&["fixtures", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("fixture"));
    assert!(text.contains("ising-qdim") && !text.contains("FAIL"));
}
