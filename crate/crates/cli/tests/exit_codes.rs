use std::process::Command;

fn pointwise(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pointwise")).args(args).output().expect("spawn");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn success_prints_a_report() {
    let (code, out) = pointwise(&["logic", "classify", "exists x. forall y. y = x"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "logic classify");
    assert_eq!(v["version"]["coding"], "coding-v1");
    assert!(v["inputs_digest"].as_str().is_some_and(|d| d.len() == 64));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(pointwise(&["logic", "classify", "exists x."]).0, 2);
    assert_eq!(pointwise(&["logic", "nonsense"]).0, 2);
    assert_eq!(pointwise(&["ua", "run", "--budget", "ten"]).0, 2);
}

#[test]
fn semantic_errors_exit_3() {
    assert_eq!(pointwise(&["struct", "definable", "--structure", "hf:9"]).0, 3);
    assert_eq!(pointwise(&["modal", "frames", "--n", "9"]).0, 3);
}

#[test]
fn io_errors_exit_4() {
    assert_eq!(pointwise(&["struct", "paris", "--structure", "/nonexistent/m.json"]).0, 4);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, out) = pointwise(&["--out", path.to_str().unwrap(), "selfref", "quine"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let again = pointwise(&["selfref", "quine"]).1;
    assert_eq!(std::fs::read_to_string(&path).unwrap(), again);
}
