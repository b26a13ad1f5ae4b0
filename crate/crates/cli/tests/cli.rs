use std::process::Command;

use chern_cli::report::{from_csv, from_json, to_csv, without_timing};
use chern_cli::{report, run_suite, run_suite_with_jobs, CliError, Format, Mode, ReportRecord, SuiteConfig};

fn small() -> SuiteConfig {
    SuiteConfig {
        samples: 40,
        seeds: 2,
        dims: vec![(2, 1), (2, 2)],
        comb_max: 6,
        ..SuiteConfig::default()
    }
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_chern-verify"));
    c.stderr(std::process::Stdio::null());
    c
}

#[test]
fn unknown_suite_is_an_error() {
    let err = run_suite("bogus", &SuiteConfig::default()).unwrap_err();
    assert!(matches!(err, CliError::UnknownSuite(_)));
    assert!(err.to_string().contains("unknown suite"));
}

#[test]
fn invalid_config_is_rejected() {
    let cfg = SuiteConfig { n_max: 7, ..SuiteConfig::default() };
    assert!(matches!(run_suite("comb", &cfg), Err(CliError::Config(_))));
}

#[test]
fn json_report_has_one_object_per_record() {
    let recs: Vec<ReportRecord> = (0..3)
        .map(|i| ReportRecord::residual("duhamel", "quadrature", format!("i={i}"), 1e-14, 1e-10))
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    report(&recs, Format::Json, &path).unwrap();
    let back = from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back.len(), 3);
    assert!(back.iter().all(|r| r.pass));
    assert!(report(&[], Format::Json, &path).is_err());
}

#[test]
fn csv_round_trip() {
    let mut recs = run_suite("comb", &small()).unwrap();
    recs.push(ReportRecord::new("main", "top", "p=1;q=1".into(), 0.1 + 0.2, 0.3, 1e-6, Mode::Rel));
    let text = to_csv(&recs).unwrap();
    assert_eq!(from_csv(&text).unwrap(), recs);
}

#[test]
fn pass_flag_follows_residual() {
    let ok = ReportRecord::new("x", "c", String::new(), 1.0 + 1e-12, 1.0, 1e-10, Mode::Abs);
    let bad = ReportRecord::new("x", "c", String::new(), 1.1, 1.0, 1e-3, Mode::Rel);
    assert!(ok.pass);
    assert!(!bad.pass);
}

#[test]
fn reruns_are_identical() {
    let cfg = small();
    for suite in ["signs", "cocycles", "heat"] {
        let a = run_suite(suite, &cfg).unwrap();
        let b = run_suite(suite, &cfg).unwrap();
        assert_eq!(without_timing(&a), without_timing(&b), "{suite}");
    }
}

#[test]
fn parallel_matches_serial() {
    let cfg = small();
    for suite in ["xext", "index", "thm412"] {
        let a = run_suite_with_jobs(suite, &cfg, 1).unwrap();
        let b = run_suite_with_jobs(suite, &cfg, 4).unwrap();
        assert_eq!(without_timing(&a), without_timing(&b), "{suite}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.txt");
    std::fs::write(&cfg_path, "# small run\ncomb_max = 3\n").unwrap();
    let out = dir.path().join("ok.json");
    let st = bin().args(["--suite", "comb", "--config"]).arg(&cfg_path).arg("--out").arg(&out).status().unwrap();
    assert_eq!(st.code(), Some(0));
    assert!(from_json(&std::fs::read_to_string(&out).unwrap()).unwrap().iter().all(|r| r.pass));

    let out = dir.path().join("bad.csv");
    let st = bin()
        .args(["--suite", "duhamel", "--tol", "1e-300", "--format", "csv", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
    assert!(from_csv(&std::fs::read_to_string(&out).unwrap()).unwrap().iter().any(|r| !r.pass));

    let st = bin().args(["--suite", "bogus"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
    let st = bin().args(["--no-such-flag"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
}
