use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_dsdeform");
const SCHEMA: &str = include_str!("../schema/report.schema.json");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn checks(report: &Value) -> Vec<&Value> {
    report["suites"].as_array().unwrap().iter().flat_map(|s| s["checks"].as_array().unwrap()).collect()
}

#[test]
fn geometry_suite_on_default_config_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"suites": ["geometry"]}"#);
    let out = run(&["verify", "--config", &cfg]);
    let report = stdout_json(&out);
    let failing: Vec<_> = checks(&report).into_iter().filter(|c| c["pass"] != true).map(|c| c["name"].clone()).collect();
    assert!(failing.is_empty(), "failing checks: {failing:?}");
    assert_eq!(code(&out), 0);
}

#[test]
fn mode_guard_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let freqs = vec!["1.0"; 20].join(",");
    let cfg = write_config(
        dir.path(),
        &format!(r#"{{"model": {{"d_plus": 20, "boost_freqs_plus": [{freqs}]}}, "suites": ["geometry"]}}"#),
    );
    let out = run(&["verify", "--config", &cfg]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("guard"), "stderr: {err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for body in [r#"{"suites": ["telepathy"]}"#, r#"{"modle": {}}"#, "not json", r#"{"model": {"d_minus": 3}}"#] {
        let cfg = write_config(dir.path(), body);
        assert_eq!(code(&run(&["verify", "--config", &cfg])), 2, "{body}");
    }
    assert_eq!(code(&run(&["verify", "--suite", "telepathy"])), 2);
    assert_eq!(code(&run(&["verify", "--config", "/nonexistent/config.json"])), 2);
    assert_ne!(code(&run(&["frobnicate"])), 0);
}

#[test]
fn locality_two_kappas_two_passing_reports() {
    let out = run(&["verify", "--suite", "locality", "--kappa", "0,0.5"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    let suites = report["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    let cs = checks(&report);
    assert_eq!(cs.len(), 2);
    assert!(cs.iter().all(|c| c["pass"] == true && c["max_residual"].as_f64().unwrap() < 1e-10));
    let kappas: Vec<&str> = cs.iter().map(|c| c["metadata"]["kappa"].as_str().unwrap()).collect();
    assert_eq!(kappas.len(), 2);
    assert_ne!(kappas[0], kappas[1]);
}

#[test]
fn csv_output_has_the_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&[
        "verify", "--suite", "locality", "--kappa", "-0.5,0.5", "--format", "csv", "--out", out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let mut rdr = csv::Reader::from_path(out_dir.join("report.csv")).unwrap();
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&headers[..5], ["suite", "kappa", "residual", "tolerance", "pass"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| &r[0] == "locality" && &r[4] == "true"));
    assert!(out_dir.join("report.json").exists());
}

#[test]
fn repeated_runs_are_byte_identical_apart_from_timings() {
    let args = ["verify", "--suite", "covering,car,locality", "--kappa", "0.5", "--seed", "7"];
    let strip = |out: Output| {
        let mut v = stdout_json(&out);
        v.as_object_mut().unwrap().remove("timings");
        serde_json::to_string_pretty(&v).unwrap()
    };
    let a = strip(run(&args));
    let b = strip(run(&args));
    assert_eq!(a, b);

    let c = strip(run(&["verify", "--suite", "covering,car,locality", "--kappa", "0.5", "--seed", "8"]));
    assert_ne!(a, c, "the seed must reach the suites");
}

#[test]
fn report_validates_against_the_shipped_schema() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let out = run(&["verify", "--suite", "geometry,wedges,inequivalence", "--kappa", "0,1"]);
    let report = stdout_json(&out);
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}");

    let mut broken = report.clone();
    broken["suites"][0]["checks"][0]["bound"] = Value::from("sideways");
    assert!(!validator.is_valid(&broken));
}

#[test]
fn every_requested_suite_appears_once_in_order() {
    let out = run(&["verify", "--suite", "lie,geometry,lie", "--kappa", "0"]);
    let report = stdout_json(&out);
    let names: Vec<&str> = report["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["lie", "geometry", "lie"]);
}

#[test]
fn group_boost_matches_base_group_boost() {
    let out = run(&["group", "--t", "0.5"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let pi = &v["covering_hom"];
    let base = &v["boost_base"];
    let (ch, sh) = (std::f64::consts::PI.cosh(), std::f64::consts::PI.sinh());
    let mut expected = [[0.0; 5]; 5];
    for (i, row) in expected.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    expected[0][0] = ch;
    expected[1][1] = ch;
    expected[0][1] = sh;
    expected[1][0] = sh;
    for i in 0..5 {
        for j in 0..5 {
            let p = pi[i][j].as_f64().unwrap();
            let b = base[i][j].as_f64().unwrap();
            assert!((p - expected[i][j]).abs() < 1e-10, "pi[{i}][{j}] = {p}");
            assert!((b - expected[i][j]).abs() < 1e-10, "base[{i}][{j}] = {b}");
        }
    }
    assert!(v["covering_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn oracle_residuals_decrease_as_eps_halves() {
    let out = run(&["oracle", "--kappa", "0.5", "--eps", "0.1,0.05,0.025", "--cutoff", "both"]);
    assert_eq!(code(&out), 0);
    let rows = stdout_json(&out);
    for cutoff in ["gaussian", "raised_cosine"] {
        let res: Vec<f64> = rows
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r["cutoff"] == cutoff)
            .map(|r| r["residual"].as_f64().unwrap())
            .collect();
        assert_eq!(res.len(), 3);
        assert!(res.windows(2).all(|w| w[1] < w[0]), "{cutoff}: {res:?}");
    }
}

#[test]
fn deform_prints_row_major_complex_pairs() {
    let out = run(&["deform", "--generator", "psi:0", "--kappa", "0.5"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let dim = v["dim"].as_u64().unwrap() as usize;
    assert_eq!(dim, 16);
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), dim);
    assert!(m.iter().all(|row| row.as_array().unwrap().len() == dim
        && row.as_array().unwrap().iter().all(|z| z.as_array().unwrap().len() == 2)));
    assert_ne!(code(&run(&["deform", "--generator", "psi:99"])), 0);
}

#[test]
fn wedges_probe_finds_witnesses() {
    let out = run(&["wedges", "--pairs", "20", "--samples", "100000"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["witnesses"], 20);
    assert_eq!(v["inconclusive"], 0);
}

#[test]
fn report_subcommand_renders_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&["verify", "--suite", "lie", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let table = run(&["report", out_dir.join("report.json").to_str().unwrap()]);
    assert_eq!(code(&table), 0);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("suite"));
    assert!(text.contains("PASS"));
    assert!(text.trim_end().ends_with("checks passed"));
}
