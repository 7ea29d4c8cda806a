use std::path::Path;

use flatfront::report::parse_report;
use flatfront::{parse_config, run_with, CliError};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("flatfront").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn error_kind(stderr: &str) -> String {
    let v: Value = serde_json::from_str(stderr.trim()).unwrap_or_else(|e| panic!("{e}: {stderr}"));
    v["error"].as_str().unwrap().to_string()
}

const COS2_LATITUDE: &str = r#"{
  "curve": {"kind": "latitude", "phi": 0.7853981633974483},
  "alpha": {"cos": [0, 1]},
  "grid": {"nt": 32, "nv": 4}
}"#;

#[test]
fn example_config_resolves() {
    let loaded = parse_config(COS2_LATITUDE, "inline").unwrap();
    let q = &loaded.quadruple;
    for k in 0..32 {
        let t = k as f64 * 0.2;
        assert!((q.alpha.eval(t) - (2.0 * t).cos()).abs() < 1e-15);
        assert!(q.beta.eval(t).abs() < 1e-15);
    }
    let again = parse_config(&serde_json::to_string(&loaded.config).unwrap(), "inline").unwrap();
    assert_eq!(again.config, loaded.config);
}

#[test]
fn missing_curve_is_schema_error() {
    match parse_config(r#"{"alpha": {"const": 1}}"#, "inline") {
        Err(CliError::Schema { key, .. }) => assert_eq!(key, "curve"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn malformed_json_reports_position() {
    match parse_config("{\n  \"curve\": \n}", "inline") {
        Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_key_is_schema_error() {
    let text = r#"{"curve": {"kind": "latitude", "phi": 0.5}, "grid": {"nt": 8, "nz": 3}}"#;
    match parse_config(text, "inline") {
        Err(CliError::Schema { key, .. }) => assert!(key.starts_with("grid"), "{key}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn project_period_removes_constant_on_latitude() {
    let text = r#"{"curve": {"kind": "latitude", "phi": 0.6}, "alpha": {"const": 1}, "project_period": true}"#;
    let q = parse_config(text, "inline").unwrap().quadruple;
    assert!(q.alpha.max_coef() < 1e-12, "{:?}", q.alpha);
}

#[test]
fn project_subcommand_writes_closing_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"curve": {"kind": "latitude", "phi": 0.6}, "alpha": {"const": 1, "cos": [0.5]}}"#,
    );
    let (code, out, err) = run(&["project", "-c", &cfg]);
    assert_eq!(code, 0, "{err}");
    let q = parse_config(&out, "projected").unwrap().quadruple;
    let f = flatfront_core::build_front(&q).unwrap();
    assert!(f.period_defect().norm() < 1e-10);
}

#[test]
fn cone_obj_layout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "cone.json",
        r#"{"curve": {"kind": "gallery", "name": "cone"}, "grid": {"nt": 4, "nv": 2, "vmin": 0, "vmax": 1}}"#,
    );
    let out = dir.path().join("out");
    let (code, _, err) = run(&["build", "-c", &cfg, "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let obj = std::fs::read_to_string(out.join("front.obj")).unwrap();
    let count = |tag: &str| obj.lines().filter(|l| l.split_whitespace().next() == Some(tag)).count();
    assert_eq!(count("v"), 8);
    assert_eq!(count("vn"), 8);
    assert_eq!(count("f"), 6);
    for l in obj.lines().filter(|l| l.starts_with("f ")) {
        for idx in l.split_whitespace().skip(1) {
            let (v, n) = idx.split_once("//").unwrap();
            assert_eq!(v, n);
            let v: usize = v.parse().unwrap();
            assert!((1..=8).contains(&v));
        }
    }
    let report = parse_report(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report.command, "build");
    assert!(report.singular.cone_point.unwrap().norm() < 1e-9);
}

#[test]
fn build_is_deterministic() {
    use sha2::{Digest, Sha256};
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", COS2_LATITUDE);
    let mut digests = Vec::new();
    for name in ["a", "b"] {
        let out = dir.path().join(name);
        let (code, _, err) = run(&["build", "-c", &cfg, "-o", out.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
        for file in ["front.obj", "report.json"] {
            digests.push(Sha256::digest(std::fs::read(out.join(file)).unwrap()));
        }
    }
    assert_eq!(digests[0], digests[2]);
    assert_eq!(digests[1], digests[3]);
}

#[test]
fn cone_caustic_refuses_export() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "cone.json", r#"{"curve": {"kind": "gallery", "name": "cone"}}"#);
    let out = dir.path().join("out");
    let (code, _, err) = run(&["caustic", "-c", &cfg, "-o", out.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&err), "DegenerateCausticExport");
    assert!(!out.join("front.obj").exists());
}

#[test]
fn caustic_of_example_is_exported() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", COS2_LATITUDE);
    let out = dir.path().join("out");
    let (code, _, err) = run(&["caustic", "-c", &cfg, "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let report = parse_report(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report.derived.unwrap().operation, "caustic");
}

#[test]
fn check_passes_on_circle_cos_n() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"curve": {"kind": "gallery", "name": "circle_cos_n", "params": {"n": 3}}}"#,
    );
    let (code, out, err) = run(&["check", "-c", &cfg]);
    assert_eq!(code, 0, "{err}");
    let report = parse_report(&out).unwrap();
    let c = report.completeness.unwrap();
    assert!(c.complete);
    assert_eq!(c.ends_embedded, Some(true));
    assert!(report.validation.passes());
}

#[test]
fn check_fails_on_period_defect() {
    let dir = tempfile::tempdir().unwrap();
    let cfg =
        write_config(dir.path(), "c.json", r#"{"curve": {"kind": "latitude", "phi": 0.6}, "alpha": {"const": 1}}"#);
    let (code, out, err) = run(&["check", "-c", &cfg]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&err), "PeriodConditionViolated");
    let report = parse_report(&out).unwrap();
    assert!(report.period_defect_warning);
    assert!(report.completeness.is_none());
}

#[test]
fn singular_csv_for_tangential_example() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", r#"{"curve": {"kind": "gallery", "name": "tangential_example54"}}"#);
    let (code, out, err) = run(&["singular", "-c", &cfg, "--samples", "256"]);
    assert_eq!(code, 0, "{err}");
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["t", "v", "class", "a", "a_prime", "mu1", "mu2"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert!(rows.len() >= 256);
    assert!(rows.iter().all(|r| &r[2] == "CuspidalEdge"));
}

#[test]
fn parallel_and_curvline_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", COS2_LATITUDE);
    let out = dir.path().join("par");
    let (code, _, err) = run(&["parallel", "-c", &cfg, "--delta", "-0.5", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let report = parse_report(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report.derived.unwrap().delta, Some(-0.5));

    let (code, out, err) = run(&["curvline", "-c", &cfg, "--v0", "0.7", "--turns", "2", "--samples-per-turn", "64"]);
    assert_eq!(code, 0, "{err}");
    let summary: Value = serde_json::from_str(out.lines().last().unwrap().trim_start_matches("# ")).unwrap();
    assert_eq!(summary["closed"], Value::Bool(true));
    assert!(summary["defect"].as_f64().unwrap().abs() < 1e-10);
}

#[test]
fn gallery_listing_and_entries() {
    let (code, out, _) = run(&["gallery", "--list"]);
    assert_eq!(code, 0);
    let names: Vec<String> = serde_json::from_str(&out).unwrap();
    assert!(names.contains(&"cardioid_cylinder".to_string()));
    let (code, out, err) = run(&["gallery", "--name", "circle_cos_n", "--params", r#"{"n":4}"#]);
    assert_eq!(code, 0, "{err}");
    assert!(parse_config(&out, "gallery").is_ok());
    let (code, _, err) = run(&["gallery", "--name", "nope"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&err), "SchemaError");
}

#[test]
fn io_and_usage_errors() {
    let (code, _, err) = run(&["check", "-c", "/nonexistent/config.json"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&err), "IOError");
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", COS2_LATITUDE);
    let (_, out, _) = run(&["check", "-c", &cfg]);
    let report = parse_report(&out).unwrap();
    assert_eq!(flatfront::report::report_json(&report), out);
}
