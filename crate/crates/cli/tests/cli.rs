use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn wlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlab")).args(args).env_remove("WLAB_COSET_LIMIT").output().expect("spawn wlab")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn malformed_presentation_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let pres = dir.path().join("bad.pres");
    fs::write(&pres, "gens: s t\nrel: s s x\n").unwrap();
    let json = dir.path().join("out.json");
    let md = dir.path().join("out.md");
    let out = wlab(&["verify", "--presentation", path(&pres), "--json", path(&json), "--markdown", path(&md)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert!(!json.exists() && !md.exists());
}

#[test]
fn verify_passes_and_writes_all_formats() {
    let dir = tempfile::tempdir().unwrap();
    let (json, csv, md) = (dir.path().join("s.json"), dir.path().join("s.csv"), dir.path().join("s.md"));
    let out = wlab(&["verify", "--json", path(&json), "--csv", path(&csv), "--markdown", path(&md)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(summary["all_passed"], true);
    let csv = fs::read_to_string(&csv).unwrap();
    assert!(!csv.contains('\r'));
    assert!(csv.starts_with("claim,anchor,status,detail\n"));
    assert!(fs::read_to_string(&md).unwrap().contains("Overall: PASS"));
}

#[test]
fn dim_table_csv_first_column() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("dims.csv");
    let out = wlab(&["tensor", "--theta", "all", "--k", "1", "--csv", path(&csv)]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&csv).unwrap(), "action,1\ntheta1,96\ntheta3,28\ntheta4,16\ntheta8=theta9,9\n");
}

#[test]
fn theta_filter_selects_one_action() {
    let out = wlab(&["tensor", "--theta", "theta4", "--k", "1..2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| theta4 | 16 | 11264 |"));
    assert!(!text.contains("theta1"));
    assert!(!wlab(&["tensor", "--theta", "theta7"]).status.success());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        assert!(wlab(&["tensor", "--k", "1..4", "--json", path(p)]).status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn empty_k_range_rejected() {
    for k in ["3..1", "0..2", "1..17"] {
        let out = wlab(&["tensor", "--k", k]);
        assert!(!out.status.success(), "{k}");
    }
}

#[test]
fn coset_limit_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_wlab"))
        .args(["group", "build"])
        .env("WLAB_COSET_LIMIT", "20")
        .output()
        .unwrap();
    assert!(!out.status.success());
    let ok = wlab(&["group", "build", "--coset-limit", "500"]);
    assert!(ok.status.success());
    let g: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(g["order"], 96);
}
