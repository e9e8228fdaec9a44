use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lietorus"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const A1: &str = r#"{"type":"A","rank":1,"sigma":[{"kind":"identity"}],"lambda":[[1]],"b":[["1"]]}"#;
const A2_SWAP: &str = r#"{"type":"A","rank":2,"sigma":[{"kind":"diagram","perm":[2,1]}]}"#;
const A2_SWAP_SWAP: &str = r#"{"type":"A","rank":2,"sigma":[{"kind":"diagram","perm":[2,1]},{"kind":"diagram","perm":[2,1]}]}"#;
const TWO_POINT: &str = r#"{"type":"A","rank":1,"sigma":[{"kind":"identity"}],"lambda":[[1],[1]],"b":[["1"],["-1"]],"alpha":["1/2"]}"#;

#[test]
fn build_writes_algebra_and_torus() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "a1.json", A1);
    let out = dir.path().join("out");
    let o = run(&["build", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let alg: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("algebra.json")).unwrap()).unwrap();
    assert_eq!(alg["dim"], 3);

    let cfg = write(dir.path(), "swap.json", A2_SWAP);
    let o = run(&["build", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let t: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("torus.json")).unwrap()).unwrap();
    assert_eq!(t["gamma"]["hnf"], serde_json::json!([[2]]));
}

#[test]
fn malformed_perm_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", r#"{"type":"A","rank":2,"sigma":[{"kind":"diagram","perm":[1,1]}]}"#);
    let o = run(&["build", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("sigma"));
}

#[test]
fn check_torus_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(dir.path(), "ok.json", A2_SWAP);
    assert_eq!(code(&run(&["check-torus", "--config", ok.to_str().unwrap()])), 0);
    let a1 = write(dir.path(), "a1.json", A1);
    assert_eq!(code(&run(&["check-torus", "--config", a1.to_str().unwrap()])), 0);
    let bad = write(dir.path(), "bad.json", A2_SWAP_SWAP);
    let o = run(&["check-torus", "--config", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 2);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failed_axiom"], 3);
}

#[test]
fn decompose_two_point_and_single_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "two.json", TWO_POINT);
    let out = dir.path().join("rep");
    let o = run(&["decompose", "--config", cfg.to_str().unwrap(), "--box", "-4:4", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("decompose.json")).unwrap()).unwrap();
    assert_eq!(rep["decomposition"]["components"].as_array().unwrap().len(), 2);
    assert_eq!(rep["decomposition"]["lattice"]["index"], 2);
    assert!(out.join("decompose.txt").exists());

    let cfg = write(dir.path(), "one.json", A1);
    let o = run(&["decompose", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rep: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rep["decomposition"]["components"].as_array().unwrap().len(), 1);
}

#[test]
fn small_box_is_inconclusive_until_escalated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "two.json", TWO_POINT);
    let c = cfg.to_str().unwrap();
    assert_eq!(code(&run(&["decompose", "--config", c, "--box", "0:1"])), 3);
    assert_eq!(code(&run(&["decompose", "--config", c, "--box", "0:1", "--escalate", "8"])), 0);
    assert_eq!(code(&run(&["decompose", "--config", c, "--box", "0:x"])), 1);
}

#[test]
fn selftest_is_deterministic_and_reports_faults() {
    let a = run(&["selftest", "--format", "json"]);
    let b = run(&["selftest", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(matches!(code(&a), 0 | 2));

    let f = run(&["selftest", "--inject-fault"]);
    assert_eq!(code(&f), 2);
    let text = String::from_utf8_lossy(&f.stdout);
    assert!(text.contains("algebra_jacobi") && text.contains("witness ("), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.json", "[]");
    let e = run(&["selftest", "--config", empty.to_str().unwrap()]);
    assert_eq!(code(&e), 0);
    assert!(String::from_utf8_lossy(&e.stderr).contains("warning"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["decompose"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}
