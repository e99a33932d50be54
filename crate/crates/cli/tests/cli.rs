use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sinfty"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("binary runs")
}

fn emit(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let out = run(args, dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &out.stdout).unwrap();
    path
}

fn write_json(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
    path
}

/// rsl2(3) with the trivial module next to it.
fn rsl2_setup(dir: &Path) {
    emit(dir, "algebra.json", &["zoo", "emit", "--family", "rsl2", "--p", "3"]);
    emit(dir, "k.json", &["zoo", "module", "--family", "rsl2", "--p", "3", "--kind", "trivial"]);
}

#[test]
fn axioms_pass_on_restricted_sl2() {
    let dir = tempfile::tempdir().unwrap();
    rsl2_setup(dir.path());
    let out = run(&["axioms", "algebra.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["triangular"]["ok"], json!(true));
}

#[test]
fn non_associative_algebra_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    // x y = x but y y = 0, so (x y) y != x (y y)
    let alg = json!({
        "p": 3,
        "basis": [{"name": "1", "deg": 0}, {"name": "x", "deg": 0}, {"name": "y", "deg": 0}],
        "unit": [1, 0, 0],
        "mult": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [0, 2, 2, 1], [2, 0, 2, 1], [1, 2, 1, 1]],
    });
    let path = write_json(dir.path(), "bad.json", &alg);
    let out = run(&["axioms", path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error[associativity]"));
}

#[test]
fn malformed_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("x.json"), "{ not json").unwrap();
    let out = run(&["axioms", "x.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_semisimple_degree_zero_part_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["zoo", "emit", "--family", "dual-numbers", "--p", "3", "--l", "0"], dir.path());
    let mut alg: Value = serde_json::from_slice(&out.stdout).unwrap();
    alg["tri"] = json!({"a0": [0, 1], "ge": [0, 1], "le": [0, 1]});
    let path = write_json(dir.path(), "dn.json", &alg);
    let out = run(&["axioms", path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("semisimple"));
}

#[test]
fn missing_triangular_data_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path(), "pa.json", &["zoo", "emit", "--family", "path-a2", "--p", "3"]);
    let out = run(&["axioms", "pa.json"], dir.path());
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn compute_writes_json_and_csv_mirror() {
    let dir = tempfile::tempdir().unwrap();
    rsl2_setup(dir.path());
    let out = run(
        &["compute", "--engine", "sinf", "--x", "k.json", "--y", "k.json", "--i", "-1:1", "--m", "-4:4", "--out", "r.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(doc["engine"], json!("sinf"));
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3 * 9);
    let csv = std::fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + entries.len());
    // (i, m) = (1, 3) is one of the nonzero entries
    let hit = entries.iter().find(|e| e["i"] == json!(1) && e["m"] == json!(3)).unwrap();
    assert_eq!(hit["dim"], json!(1));
}

#[test]
fn certify_agrees_then_catches_perturbation() {
    let dir = tempfile::tempdir().unwrap();
    rsl2_setup(dir.path());
    for (engine, out) in [("sinf", "a.json"), ("hom-through", "b.json")] {
        let o = run(
            &["compute", "--engine", engine, "--x", "k.json", "--y", "k.json", "--i", "-2:2", "--m", "-6:6", "--out", out],
            dir.path(),
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(run(&["certify", "a.json", "b.json"], dir.path()).status.code(), Some(0));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("b.json")).unwrap()).unwrap();
    let e = doc["entries"].as_array_mut().unwrap().iter_mut().find(|e| e["i"] == json!(0) && e["m"] == json!(2)).unwrap();
    e["dim"] = json!(e["dim"].as_u64().unwrap() + 1);
    write_json(dir.path(), "c.json", &doc);
    let out = run(&["certify", "a.json", "c.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("i=0 m=2"));
}

#[test]
fn certify_disjoint_windows_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    rsl2_setup(dir.path());
    for (m, out) in [("-4:-1", "a.json"), ("1:4", "b.json")] {
        let o = run(&["compute", "--engine", "ext", "--x", "k.json", "--y", "k.json", "--i", "0:1", "--m", m, "--out", out], dir.path());
        assert!(o.status.success());
    }
    assert_eq!(run(&["certify", "a.json", "b.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn local_cohomology_rejects_characteristic_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["oracle", "local-cohomology", "--p", "2"], dir.path());
    assert!(!out.status.success());
    let out = run(&["oracle", "local-cohomology", "--p", "3", "--window", "0:4"], dir.path());
    assert!(out.status.success());
    let t: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(t["by_weight"]["4"], json!([0, 4, 0]));
}

#[test]
fn thread_cap_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    rsl2_setup(dir.path());
    let args = ["compute", "--engine", "sinf", "--x", "k.json", "--y", "k.json", "--i", "-1:1", "--m", "-3:3", "--format", "csv"];
    let one = bin().args(args).current_dir(dir.path()).env("SINFTY_THREADS", "1").output().unwrap();
    let many = run(&args, dir.path());
    assert_eq!(one.stdout, many.stdout);
}
