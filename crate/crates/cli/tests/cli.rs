use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hullforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hullforge"))
        .args(args)
        .env("HULLFORGE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

const TABLE1_ROW: [&str; 16] = [
    "construct",
    "--family",
    "T1a",
    "--p",
    "2",
    "--e",
    "6",
    "--l",
    "2",
    "--n",
    "63",
    "--k",
    "10",
    "--h",
    "1",
    "--format",
];

fn table1_descriptor() -> Value {
    let mut args = TABLE1_ROW.to_vec();
    args.push("json");
    let out = hullforge(&args);
    assert_eq!(code(&out), 0);
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn construct_table1_row() {
    let d = table1_descriptor();
    assert_eq!(d["claimedHullDim"], 1);
    assert_eq!(d["a"].as_array().unwrap().len(), 63);
    let q = &d["eaqecc"];
    assert_eq!(
        (
            q["n"].as_u64(),
            q["k"].as_u64(),
            q["d"].as_u64(),
            q["c"].as_u64()
        ),
        (Some(63), Some(9), Some(54), Some(52))
    );
    assert_eq!(d["provenance"]["family"], "T1a");
}

#[test]
fn construct_k_too_large_is_inadmissible() {
    let out = hullforge(&[
        "construct",
        "--family",
        "T1a",
        "--p",
        "2",
        "--e",
        "6",
        "--l",
        "2",
        "--n",
        "63",
        "--k",
        "99",
        "--h",
        "1",
    ]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("k = 99"), "{err}");
}

#[test]
fn construct_table4_row_text() {
    let out = hullforge(&[
        "construct",
        "--family",
        "T4n",
        "--p",
        "3",
        "--e",
        "4",
        "--l",
        "1",
        "--m",
        "40",
        "--r",
        "1",
        "--k",
        "9",
        "--h",
        "1",
        "--format",
        "text",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("[[40,8,32;30]]_81"));
}

#[test]
fn missing_family_extras_is_inadmissible() {
    let out = hullforge(&[
        "construct",
        "--family",
        "T3n",
        "--p",
        "3",
        "--e",
        "4",
        "--l",
        "1",
        "--k",
        "3",
        "--h",
        "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn descriptor_round_trip_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "d.json", &table1_descriptor());
    let out = hullforge(&["verify", &path, "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["ok"], true);
    assert_eq!(report["hull"]["methods"]["stacked"], 1);
    assert_eq!(report["hull"]["methods"]["rankHH"], 1);
}

#[test]
fn small_descriptor_gets_exhaustive_checks() {
    let out = hullforge(&[
        "construct",
        "--family",
        "T4n1",
        "--p",
        "3",
        "--e",
        "4",
        "--l",
        "1",
        "--m",
        "8",
        "--r",
        "1",
        "--k",
        "2",
        "--h",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "d.json",
        &serde_json::from_str(&stdout(&out)).unwrap(),
    );
    let out = hullforge(&["verify", &path, "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["mdsMinors"], true);
    assert_eq!(report["minDistance"], 8);
}

#[test]
fn tampered_hull_claim_fails_verification() {
    let mut d = table1_descriptor();
    d["claimedHullDim"] = 2.into();
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "d.json", &d);
    assert_eq!(code(&hullforge(&["verify", &path])), 4);
}

#[test]
fn tampered_eaqecc_claim_fails_verification() {
    let mut d = table1_descriptor();
    d["eaqecc"]["c"] = 51.into();
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "d.json", &d);
    assert_eq!(code(&hullforge(&["verify", &path])), 4);
}

#[test]
fn malformed_descriptors_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    let mut dup = table1_descriptor();
    dup["a"][1] = dup["a"][0].clone();
    let mut zero_v = table1_descriptor();
    zero_v["v"][3] = Value::Null;
    let mut missing = table1_descriptor();
    missing.as_object_mut().unwrap().remove("k");
    for (name, v) in [("dup", dup), ("zero", zero_v), ("missing", missing)] {
        let path = write(dir.path(), name, &v);
        assert_eq!(code(&hullforge(&["verify", &path])), 5, "{name}");
    }
    let garbage = dir.path().join("garbage");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(code(&hullforge(&["verify", garbage.to_str().unwrap()])), 5);
    assert_eq!(
        code(&hullforge(&[
            "verify",
            dir.path().join("absent").to_str().unwrap()
        ])),
        5
    );
}

#[test]
fn table_4_matches_and_is_deterministic() {
    let a = hullforge(&["table", "4"]);
    let b = hullforge(&["--sequential", "table", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_end().ends_with("ok"))
            .count(),
        42
    );
    assert!(text.contains("[[40,8,32;30]]_81"));
}

#[test]
fn unknown_table_is_rejected() {
    assert_eq!(code(&hullforge(&["table", "7"])), 2);
}

#[test]
fn empty_sweep_prints_header() {
    let out = hullforge(&[
        "sweep", "--p", "3", "--e", "2", "--n-min", "5", "--n-max", "3",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "p,e,l,n,k,hullPrimal,hullDual\n");
}

#[test]
fn euclidean_sweep_rows_are_symmetric() {
    let out = hullforge(&[
        "sweep", "--p", "3", "--e", "4", "--levels", "0", "--n-max", "16", "--k-max", "3",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[2], "0");
        assert_eq!(f[5], f[6], "{line}");
        rows += 1;
    }
    assert!(rows > 0);
}

#[test]
fn field_info_json() {
    let out = hullforge(&["field-info", "--p", "3", "--e", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["p"], 3);
    assert_eq!(v["modulus"].as_array().unwrap().len(), 5);
    assert_eq!(code(&hullforge(&["field-info", "--p", "4", "--e", "1"])), 2);
}
