use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn ginv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ginv")).args(args).output().expect("spawn ginv")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, value: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn exact(rows: &[&[i64]]) -> Value {
    let entries: Vec<Vec<Value>> =
        rows.iter().map(|r| r.iter().map(|x| json!({"re": x.to_string(), "im": "0"})).collect()).collect();
    json!({"n": rows.len(), "backend": "exact", "entries": entries})
}

#[test]
fn demo_exits_zero() {
    let out = ginv(&["demo", "example-3-7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["conditions"]["overall"], json!(true));
    assert_eq!(v["acd_equals_dbd"], json!(false));
    assert_eq!(v["bd_index"], json!(2));
}

#[test]
fn drazin_of_identity() {
    let dir = TempDir::new().unwrap();
    let id = exact(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let input = write(dir.path(), "i4.json", &id);
    let out = ginv(&["drazin", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["index"], json!(0));
    assert_eq!(v["entries"], id["entries"]);
}

#[test]
fn violated_family_exits_one() {
    let dir = TempDir::new().unwrap();
    let quad = json!({
        "family": "ring-four",
        "a": exact(&[&[1, 0], &[0, 1]]),
        "b": exact(&[&[1, 1], &[0, 0]]),
        "c": exact(&[&[1, 0], &[0, 0]]),
        "d": exact(&[&[1, 0], &[0, 1]]),
    });
    let input = write(dir.path(), "quad.json", &quad);
    let out = ginv(&["check", "--family", "ring-four", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["overall"], json!(false));

    // the same quadruple satisfies the two weak equations
    let out = ginv(&["check", "--family", "banach-weak", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_json_reports_position() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"n\": 2,\n \"backend\": \"exact\",\n  \"entries\": [[}").unwrap();
    let out = ginv(&["drazin", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3 column 16"), "{err}");
}

#[test]
fn generated_quadruple_round_trips_through_check() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("q.json");
    let out = ginv(&["gen", "--family", "lian-zeng", "--dim", "3", "--seed", "5", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let generated: Value = serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    assert_eq!(generated["family"], json!("lian-zeng"));

    let out = ginv(&["check", "--input", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["overall"], json!(true));

    let out = ginv(&["transfer", "--input", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn degenerate_suite_passes() {
    let out = ginv(&["suite", "--seeds", "1", "--dims", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["all_pass"], json!(true));
    assert_eq!(v["total_failures"], json!(0));
}

#[test]
fn float_spectrum_of_generated_quadruple() {
    let dir = TempDir::new().unwrap();
    let q = dir.path().join("q.json");
    assert_eq!(
        ginv(&["gen", "--family", "ring-four", "--dim", "3", "--seed", "1", "--out", q.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    let out = ginv(&["spectrum", "--input", q.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["nonzero_spectrum_equal"], json!(true));
    assert_eq!(v["lambda_checks"].as_array().map(Vec::len), Some(20));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ginv(&[]).status.code(), Some(2));
    assert_eq!(ginv(&["drazin"]).status.code(), Some(2));
    assert_eq!(ginv(&["suite", "--dims", "x"]).status.code(), Some(2));
}
