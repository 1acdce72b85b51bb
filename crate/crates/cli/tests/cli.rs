use std::path::PathBuf;
use std::process::{Command, Output};

fn system(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", "systems", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nikishin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn inverse_prints_closed_forms() {
    let o = run(&["inverse", "--moments", "1,0,2", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("d₋₂=1"), "{s}");
    assert!(s.contains("d₋₁=0"), "{s}");
    assert!(s.contains("d₀=-2"), "{s}");
    assert!(s.contains("[L4] PASS"), "{s}");
}

#[test]
fn inverse_reads_a_moment_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c.json");
    std::fs::write(&f, r#"["2", "1", "3/2", "0"]"#).unwrap();
    let o = run(&["--json", "inverse", "--moments-file", f.to_str().unwrap(), "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn type2_solution_on_three_atoms() {
    let o = run(&["solve", "--type", "type2", "--system", &system("one-measure.json"), "--index", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Q = 1/3, -2, 1"), "{}", stdout(&o));
}

#[test]
fn scan_and_validate_pass_on_d1() {
    let o = run(&["scan", "--system", &system("d1.json"), "--budget", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    for key in ["[T3] PASS", "[T2] PASS", "[C1] PASS", "[C3] PASS", "note: certified for the finite budget"] {
        assert!(s.contains(key), "{key} missing from {s}");
    }
    assert_eq!(run(&["validate", "--system", &system("d1.json")]).status.code(), Some(0));
}

#[test]
fn json_reports_are_byte_identical() {
    let args = ["--json", "at-test", "--system", &system("d1.json"), "--seed", "9", "--trials", "5", "--max-norm", "3"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["report"]["seed"], 9);
}

#[test]
fn out_file_matches_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["--json", "--out", out.to_str().unwrap(), "identities", "--system", &system("touching.json")]);
    assert_eq!(o.status.code(), Some(0));
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let printed: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(written, printed);
    assert_eq!(printed["summary"][0]["key"], "ID");
}

#[test]
fn converge_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["converge", "--system", &system("d1.json"), "--max-norm", "8", "--tables", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    for ext in ["csv", "json", "dat"] {
        assert!(dir.path().join(format!("convergence.{ext}")).exists(), "{ext}");
    }
    let csv = std::fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    assert!(csv.starts_with("index,norm,sup_error_0"), "{csv}");
}

#[test]
fn failed_certification_exits_one() {
    let o = run(&["converge", "--system", &system("d1.json"), "--max-norm", "6", "--max-slope", "-1000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[C2] FAIL"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["scan", "--budget", "3"]).status.code(), Some(2));
    assert_eq!(run(&["at-test", "--system", &system("d1.json")]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--system", "/nonexistent.json", "--budget", "1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"backend": "rational", "measures": [{"atoms": [["1/2"]]}]}"#).unwrap();
    assert_eq!(run(&["validate", "--system", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["inverse", "--moments", "0,1,2", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
