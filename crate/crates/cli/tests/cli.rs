use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn default_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/default.toml")
}

fn trialg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trialg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_report(config: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "report",
        "--config",
        config.to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    trialg(&args)
}

fn read_dir(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

fn write_config(dir: &TempDir, body: &str) -> PathBuf {
    let path = dir.path().join("workspace.toml");
    fs::write(&path, body).unwrap();
    path
}

const TRI_Z3: &str = r#"
modulus = 3

[[rings]]
name = "Z3"
builtin = "zm"

[[bimodules]]
name = "M"
kind = "regular"
ring = "Z3"

[[triangulars]]
name = "T"
r = "Z3"
m = "M"
s = "Z3"
"#;

#[test]
fn default_config_passes() {
    let out = TempDir::new().unwrap();
    let res = run_report(&default_config(), out.path(), &[]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stdout));
    let index: Value = serde_json::from_slice(&fs::read(out.path().join("index.json")).unwrap()).unwrap();
    assert_eq!(index["all_passed"], true);
    assert_eq!(index["tasks"].as_array().unwrap().len(), 19);
}

#[test]
fn reports_are_byte_identical_across_runs_and_workers() {
    let (a, b, c) = (
        TempDir::new().unwrap(),
        TempDir::new().unwrap(),
        TempDir::new().unwrap(),
    );
    run_report(&default_config(), a.path(), &[]);
    run_report(&default_config(), b.path(), &[]);
    run_report(&default_config(), c.path(), &["--workers", "4"]);
    let first = read_dir(a.path());
    assert!(first.len() > 10);
    assert_eq!(first, read_dir(b.path()));
    assert_eq!(first, read_dir(c.path()));
}

#[test]
fn every_report_carries_schema_version_and_hash() {
    let out = TempDir::new().unwrap();
    run_report(&default_config(), out.path(), &[]);
    let mut hashes = Vec::new();
    for (name, bytes) in read_dir(out.path()) {
        if !name.ends_with(".json") {
            continue;
        }
        let v: Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(v["schema"], 1, "{name}");
        assert!(v["tool_version"].as_str().unwrap().starts_with("trialg "), "{name}");
        hashes.push(v["config_hash"].as_str().unwrap().to_string());
    }
    hashes.dedup();
    assert_eq!(hashes.len(), 1);
    assert_eq!(hashes[0].len(), 64);
}

#[test]
fn seed_only_touches_property_reports() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    run_report(&default_config(), a.path(), &["--seed", "1"]);
    run_report(&default_config(), b.path(), &["--seed", "2"]);
    let (ra, rb) = (read_dir(a.path()), read_dir(b.path()));
    for (name, bytes) in &ra {
        if name.contains("properties") {
            assert_ne!(bytes, &rb[name]);
        } else {
            assert_eq!(bytes, &rb[name], "{name}");
        }
    }
}

#[test]
fn empty_task_list_gives_empty_index() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "modulus = 3\n");
    let out = dir.path().join("out");
    let res = run_report(&cfg, &out, &[]);
    assert_eq!(res.status.code(), Some(0));
    let index: Value = serde_json::from_slice(&fs::read(out.join("index.json")).unwrap()).unwrap();
    assert_eq!(index["tasks"], Value::Array(vec![]));
    assert_eq!(index["all_passed"], true);
}

#[test]
fn even_modulus_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "modulus = 4\n");
    let res = run_report(&cfg, &dir.path().join("out"), &[]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("2-torsion free"));
    let res = trialg(&["validate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let cases = [
        "modulus = 3\nbogus = 1\n".to_string(),
        format!("{TRI_Z3}\n[[tasks]]\ntype = \"solve\"\ncondition = \"no-such\"\nring = \"T\"\n"),
        format!("{TRI_Z3}\n[[tasks]]\ntype = \"verify-thm-3-1\"\ntriangular = \"missing\"\n"),
        format!("{TRI_Z3}\n[[tasks]]\ntype = \"decompose\"\ntriangular = \"T\"\ntau = \"nope.json\"\ndelta = \"nope.json\"\n"),
    ];
    for body in cases {
        let cfg = write_config(&dir, &body);
        let res = run_report(&cfg, &dir.path().join("out"), &[]);
        assert_eq!(res.status.code(), Some(2), "{body}");
    }
}

#[test]
fn non_faithful_bimodule_is_rejected_with_witness() {
    let dir = TempDir::new().unwrap();
    let body = r#"
modulus = 3

[[rings]]
name = "Z3"
builtin = "zm"

[[bimodules]]
name = "O"
kind = "zero"
left = "Z3"
right = "Z3"

[[triangulars]]
name = "T"
r = "Z3"
m = "O"
s = "Z3"
"#;
    let cfg = write_config(&dir, body);
    let res = trialg(&["validate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("not faithful") && err.contains("[1]"), "{err}");
}

#[test]
fn failing_check_exits_with_one() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("bad.json"),
        r#"{"label": "T", "modulus": 3, "k": 3, "entries": [1, 0, 0, 0, 0, 0, 0, 0, 0]}"#,
    )
    .unwrap();
    let body = format!(
        "{TRI_Z3}\n[[tasks]]\ntype = \"diagnostics\"\ntriangular = \"T\"\nmap = \"bad.json\"\nwhich = \"centralizer\"\n\n\
         [[tasks]]\ntype = \"decompose\"\ntriangular = \"T\"\ntau = \"bad.json\"\ndelta = \"bad.json\"\n"
    );
    let cfg = write_config(&dir, &body);
    let out = dir.path().join("out");
    let res = run_report(&cfg, &out, &[]);
    assert_eq!(res.status.code(), Some(1));
    let diag: Value = serde_json::from_slice(&fs::read(out.join("00-diagnostics.json")).unwrap()).unwrap();
    assert_eq!(diag["status"], "failed");
    let failing: Vec<&Value> = diag["result"]["checks"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing[0]["witness"].as_str().unwrap().contains("X = "));
}

#[test]
fn wrong_expected_cardinality_fails() {
    let dir = TempDir::new().unwrap();
    let body = format!(
        "{TRI_Z3}\n[[tasks]]\ntype = \"solve\"\ncondition = \"derivation\"\nring = \"T\"\nexpect_cardinality = \"10\"\n"
    );
    let cfg = write_config(&dir, &body);
    let res = trialg(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        dir.path().join("o").to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stdout).contains("expected cardinality 10, found 9"));
}

#[test]
fn enumeration_bound_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let body = format!("{TRI_Z3}\n[[tasks]]\ntype = \"verify-thm-3-1\"\ntriangular = \"T\"\n");
    let cfg = write_config(&dir, &body);
    let out = dir.path().join("out");
    let res = trialg(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
        "--bound",
        "10",
    ]);
    assert_eq!(res.status.code(), Some(3));
    let rep: Value = serde_json::from_slice(&fs::read(out.join("00-verify-thm-3-1.json")).unwrap()).unwrap();
    assert_eq!(rep["status"], "bound-exceeded");
}

#[test]
fn subcommands_select_tasks() {
    let out = TempDir::new().unwrap();
    let res = trialg(&[
        "decompose",
        "--config",
        default_config().to_str().unwrap(),
        "--out-dir",
        out.path().to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0));
    let index: Value = serde_json::from_slice(&fs::read(out.path().join("index.json")).unwrap()).unwrap();
    let types: Vec<&str> = index["tasks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["type"].as_str().unwrap())
        .collect();
    assert_eq!(types, ["decompose"]);
}
