use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn ftl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftl")).args(args).output().expect("spawn ftl")
}

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/scenarios")
}

fn scenario(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn every_documented_scenario_runs() {
    let mut count = 0;
    for entry in fs::read_dir(examples()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let out = ftl(&["run", path.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "{} failed: {}",
            path.display(),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{} printed nothing", path.display());
        count += 1;
    }
    assert!(count >= 8);
}

#[test]
fn reversal_example_reports_switch() {
    let out = ftl(&["run", examples().join("reversal.json").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# reversal_at=4"), "{text}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let lottery = examples().join("lottery.json");
    let mut files = Vec::new();
    for i in 0..2 {
        let target = dir.path().join(format!("run{i}.json"));
        let out = ftl(&["run", lottery.to_str().unwrap(), "--out", target.to_str().unwrap(), "--quiet"]);
        assert!(out.status.success());
        files.push(fs::read(&target).unwrap());
    }
    assert_eq!(files[0], files[1]);

    let reseeded = dir.path().join("reseeded.json");
    ftl(&["run", lottery.to_str().unwrap(), "--seed", "8", "--out", reseeded.to_str().unwrap(), "--quiet"]);
    assert_ne!(fs::read(&reseeded).unwrap(), files[0]);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let empty = scenario(&dir, "empty.json", "{}");
    assert_eq!(ftl(&["run", &empty]).status.code(), Some(1));

    let missing = dir.path().join("nope.json");
    assert_eq!(ftl(&["run", missing.to_str().unwrap()]).status.code(), Some(1));

    let typo = scenario(
        &dir,
        "typo.json",
        r#"{"kind": "reversal", "parameters": {"frist": 10, "second": 20, "wealth": 100,
            "first_sense": 0.9, "second_sense": 0.6, "horizon": 10}}"#,
    );
    let out = ftl(&["run", &typo]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("frist"));

    let domain = scenario(
        &dir,
        "domain.json",
        r#"{"kind": "prospect_curve", "parameters": {"p": 1.5, "rho": 1.2}}"#,
    );
    assert_eq!(ftl(&["run", &domain]).status.code(), Some(2));
}

#[test]
fn reproduce_ids() {
    for id in ["thaler-magnitude", "thaler-time", "fig3", "fig4", "fig5", "fig6", "subadditivity-demo"] {
        let out = ftl(&["reproduce", id]);
        assert_eq!(out.status.code(), Some(0), "{id}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    }
    assert_eq!(ftl(&["reproduce", "fig99"]).status.code(), Some(1));
    assert_eq!(ftl(&["reproduce", "fig5", "--tolerance", "0"]).status.code(), Some(3));
}

#[test]
fn reproduce_writes_curve() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("fig5.csv");
    let out = ftl(&["reproduce", "fig5", "--out", target.to_str().unwrap(), "--quiet"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(&target).unwrap();
    assert!(csv.lines().any(|l| l.starts_with("x,")), "{csv}");
}
