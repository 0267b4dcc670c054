use std::io::Write;
use std::process::Command;

use dold_cli::document::{ReportDocument, Status};
use dold_cli::run_command;
use serde_json::Value;

fn run(args: &str) -> (i32, Value) {
    let argv = std::iter::once("dold").chain(args.split_whitespace());
    let out = run_command(argv);
    let v: Value = serde_json::from_str(&out.output)
        .unwrap_or_else(|e| panic!("`{args}` printed invalid JSON ({e}):\n{}", out.output));
    (out.code, v)
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../../../docs/report-schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(v: &Value) {
    let s = schema();
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{e} at {}", e.instance_path))
            .collect(),
    };
    panic!("schema violations: {msgs:#?}\n{v:#}");
}

fn golden(name: &str, args: &str) {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    let want: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let (code, got) = run(args);
    assert_eq!(code, 0);
    assert_eq!(got, want, "golden mismatch for `{args}`");
}

#[test]
fn fail_example_is_exact_six() {
    golden(
        "fail_example.json",
        "fail --coeffs 12,3 --initial 2,25 --horizon 200",
    );
    let (_, v) = run("fail --coeffs 12,3 --initial 2,25 --horizon 200");
    assert_eq!(v["result"]["fail"]["kind"], "exact");
    assert_eq!(v["result"]["fail"]["value"], "6");
}

#[test]
fn fibonacci_check_flags_three() {
    golden(
        "check_fibonacci.json",
        "check --coeffs 1,1 --initial 1,1 --horizon 50",
    );
    let (_, v) = run("check --coeffs 1,1 --initial 1,1 --horizon 50");
    let ns: Vec<u64> = v["result"]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["n"].as_u64().unwrap())
        .collect();
    assert!(ns.contains(&3));
}

#[test]
fn fourth_power_lower_bound_is_six() {
    golden(
        "power_fourth.json",
        "power --t 4 --coeffs 0,10,0,-1 --initial 1,0,9,0 --horizon 6",
    );
    let (_, v) = run("power --t 4 --coeffs 0,10,0,-1 --initial 1,0,9,0 --horizon 6");
    assert_eq!(v["result"]["empirical_lower"], "6");
    assert_eq!(v["result"]["substitute_radical"], "6");
}

#[test]
fn every_subcommand_validates() {
    let dir = tempfile::tempdir().unwrap();
    let bfile = dir.path().join("b.txt");
    std::fs::write(&bfile, "# squares\n1 1\n2 4\n3 9\n4 16\n").unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"coeffs": ["1", "1"], "initial": ["1", "3"]}"#).unwrap();
    let cases = [
        "gen --coeffs 1,1 --initial 1,1 --count 10".to_string(),
        "check --coeffs 2 --initial 2".into(),
        "fail --coeffs 1,1 --initial 1,1".into(),
        "fail --coeffs 3 --initial 1 --known-bound 3:order one".into(),
        "classify --coeffs 0,10,0,-1 --initial 0,5,0,49".into(),
        "classify --coeffs 4,-4 --initial 1,2".into(),
        "power --t 2 --coeffs 1,1 --initial 1,1".into(),
        "power --t 3 --coeffs 4,-4 --initial 1,2".into(),
        "family --delta 12".into(),
        "witness --coeffs 0,10,0,-1 --initial 0,5,0,49".into(),
        "density --poly 1,0,-10,0,1 --bound 2000".into(),
        "density --coeffs 1,1 --initial 1,1".into(),
        format!("bfile-check {}", bfile.display()),
        format!("fail --spec {}", spec.display()),
        "fail --coeffs 0 --initial 1".into(),
        "check --coeffs 3 --initial 1 --max-bits 40".into(),
        "nonsense".into(),
    ];
    for args in &cases {
        let (code, v) = run(args);
        assert_valid(&v);
        assert_eq!(v["exit_code"].as_i64().unwrap(), code as i64, "{args}");
    }
}

#[test]
fn documents_round_trip() {
    for args in [
        "fail --coeffs 12,3 --initial 2,25",
        "power --t 4 --coeffs 0,10,0,-1 --initial 1,0,9,0 --horizon 6",
        "gen --coeffs 0 --initial 1",
    ] {
        let out = run_command(std::iter::once("dold").chain(args.split_whitespace()));
        let doc = ReportDocument::from_json(&out.output).unwrap();
        let again = ReportDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(doc, again);
        assert!(!doc.schema_version.is_empty());
    }
}

#[test]
fn exit_codes() {
    let (code, v) = run("fail --coeffs 1,1 --initial 1,1");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["fail"]["kind"], "infinite");

    for args in [
        "fail --coeffs 1,x --initial 1,1",
        "fail --coeffs 1,1 --initial 1",
        "fail --coeffs 1,1",
        "fail --bogus-flag",
        "family --delta 0",
        "density --poly 2,1",
    ] {
        let (code, v) = run(args);
        assert_eq!(code, 1, "{args}");
        assert_eq!(v["status"], "error");
    }

    let (code, v) = run("check --coeffs 3 --initial 1 --max-bits 40");
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "guard");
    assert_eq!(v["input"]["coeffs"][0], "3");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dold");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    assert_eq!(
        status(&["gen", "--coeffs", "1,1", "--initial", "1,1"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(status(&["gen", "--coeffs", "1,1"]).status.code(), Some(1));
    let out = status(&[
        "check",
        "--coeffs",
        "3",
        "--initial",
        "1",
        "--max-bits",
        "40",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&v);
}

#[test]
fn spec_from_standard_input() {
    let bin = env!("CARGO_BIN_EXE_dold");
    let mut child = Command::new(bin)
        .args(["fail", "--spec", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"coeffs": ["12", "3"], "initial": ["2", "25"]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["fail"]["value"], "6");
}

#[test]
fn powers_of_two_bfile() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b000079.txt");
    let mut text = String::from("# 2^n\n");
    for n in 1..=60u32 {
        text.push_str(&format!("{n} {}\n", 1u64 << n));
    }
    std::fs::write(&path, text).unwrap();
    let (code, v) = run(&format!("bfile-check {}", path.display()));
    assert_eq!(code, 0);
    assert_valid(&v);
    let r = &v["result"];
    assert_eq!(r["analysed"], 60);
    assert!(r["report"]["violations"].as_array().unwrap().is_empty());
    assert!(r["report"]["sign_violations"]
        .as_array()
        .unwrap()
        .is_empty());
    assert_eq!(r["report"]["verdict"]["status"], "unknown");
    assert_eq!(r["report"]["fail"]["lower"], "1");
}

#[test]
fn bfile_offsets_and_gaps_warn() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    std::fs::write(&path, "0 1\n1 1\n2 2\n4 5\n").unwrap();
    let (code, v) = run(&format!("bfile-check {}", path.display()));
    assert_eq!(code, 0);
    let w = v["warnings"].as_array().unwrap();
    assert_eq!(w.len(), 2, "{w:?}");
    assert_eq!(v["result"]["analysed"], 3);

    std::fs::write(&path, "1 1\n1 2\n").unwrap();
    let (code, v) = run(&format!("bfile-check {}", path.display()));
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn human_output() {
    let out = run_command([
        "dold",
        "--human",
        "fail",
        "--coeffs",
        "12,3",
        "--initial",
        "2,25",
    ]);
    assert_eq!(out.code, 0);
    assert!(out.output.starts_with("dold fail: ok"));
    assert!(out.output.contains("kind: exact"));
    let out = run_command(["dold", "--help"]);
    assert_eq!(out.code, 0);
    assert!(out.output.contains("bfile-check"));
}

#[test]
fn status_matches_exit_code() {
    let (code, v) = run("gen --coeffs 1 --initial 1");
    let doc: ReportDocument = serde_json::from_value(v).unwrap();
    assert_eq!(doc.status, Status::Ok);
    assert_eq!(code, 0);
}
