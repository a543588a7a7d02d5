use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::{json, Value};
use valext::cli::{self, Format, RunOptions};

fn valext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valext")).args(args).output().expect("binary runs")
}

fn write_job(dir: &Path, name: &str, job: &Value) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(job).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn run_then_recheck_through_binary() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "tower.json", &json!({"task": "piltant", "p": 3, "e": [1, 2, 4, 7, 11], "depth": 3}));
    let out = valext(&["run", &job]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = dir.path().join("tower.report.json");
    let first = fs::read(&report).unwrap();

    let re = valext(&["recheck", report.to_str().unwrap(), "--json"]);
    assert_eq!(re.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&re.stdout).unwrap();
    assert_eq!(v["result"], "pass");
    assert_eq!(v["kind"], "defect-tower");

    let again = valext(&["run", &job]);
    assert_eq!(again.stdout, out.stdout);
    assert_eq!(fs::read(&report).unwrap(), first);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bogus = write_job(dir.path(), "bogus.json", &json!({"task": "bogus"}));
    assert_eq!(valext(&["run", &bogus]).status.code(), Some(2));
    assert!(!dir.path().join("bogus.report.json").exists());

    let missing = write_job(dir.path(), "missing.json", &json!({"task": "piltant", "p": 2}));
    assert_eq!(valext(&["run", &missing]).status.code(), Some(2));

    let domain = write_job(dir.path(), "domain.json", &json!({"task": "degree-bound", "p": 2, "n": [3, 4], "depth": 2}));
    let out = valext(&["run", &domain]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "error");
    assert_eq!(v["kind"], "domain");

    let batch = write_job(
        dir.path(),
        "batch.json",
        &json!({"jobs": [
            {"task": "degree-bound", "p": 2, "n": [3, 5], "depth": 2},
            {"task": "degree-bound", "p": 2, "n": [3, 4], "depth": 2}
        ]}),
    );
    assert_eq!(valext(&["run", &batch]).status.code(), Some(1));
    assert!(dir.path().join("batch.0.report.json").exists());
    assert!(dir.path().join("batch.1.report.json").exists());

    assert_ne!(valext(&["recheck", dir.path().join("nope.json").to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn tampered_report_fails_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), "db.json", &json!({"task": "degree-bound", "p": 2, "n": [3, 5, 7], "depth": 3}));
    assert_eq!(valext(&["run", &job]).status.code(), Some(0));
    let report = dir.path().join("db.report.json");
    let mut v: Value = serde_json::from_slice(&fs::read(&report).unwrap()).unwrap();
    v["body"]["bound"] = json!(106);
    fs::write(&report, v.to_string()).unwrap();
    assert_eq!(valext(&["recheck", report.to_str().unwrap()]).status.code(), Some(1));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn certificates_recheck_after_run(p in prop::sample::select(vec![2u64, 3, 5]), e1 in 1u64..=3, gaps in prop::collection::vec(0u64..=2, 3), depth in 1usize..=3) {
        let mut e = vec![e1];
        for (i, g) in gaps.iter().enumerate() {
            let prev = e[i];
            e.push(prev + i as u64 + 1 + g);
        }
        let dir = tempfile::tempdir().unwrap();
        let job = write_job(dir.path(), "job.json", &json!({"task": "piltant", "p": p, "e": e, "depth": depth}));
        let (code, _) = cli::run_file(Path::new(&job), &RunOptions::default(), Format::Json, None);
        prop_assert_eq!(code, cli::EXIT_OK);
        let outcome = cli::recheck_file(&dir.path().join("job.report.json")).unwrap();
        prop_assert!(outcome.passed, "{}", outcome.text);
    }

    #[test]
    fn other_certificate_tasks_recheck(p in prop::sample::select(vec![2u64, 3, 5]), start in 2u64..=6, num in 1i64..=5, den in 1i64..=6) {
        let n: Vec<u64> = (start..40).filter(|x| x % p != 0).take(3).collect();
        let jobs = json!({"jobs": [
            {"task": "degree-bound", "p": p, "n": n, "depth": 3},
            {"task": "classify", "vag": {"kind": "vag", "base": {"kind": "p-adic", "p": p}, "center": "0", "gamma": format!("{num}/{den}")}},
            {"task": "classify", "vag": {"kind": "vag", "base": {"kind": "p-adic", "p": p}, "center": "1", "gamma": [format!("{num}/{den}"), "1"]}}
        ]});
        let dir = tempfile::tempdir().unwrap();
        let job = write_job(dir.path(), "batch.json", &jobs);
        let (code, _) = cli::run_file(Path::new(&job), &RunOptions::default(), Format::Json, None);
        prop_assert_eq!(code, cli::EXIT_OK);
        for i in 0..3 {
            let outcome = cli::recheck_file(&dir.path().join(format!("batch.{i}.report.json"))).unwrap();
            prop_assert!(outcome.passed, "job {}: {}", i, outcome.text);
        }
    }
}
