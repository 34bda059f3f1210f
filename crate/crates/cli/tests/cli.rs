use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn conelift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conelift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn manifest(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("run.json");
    fs::write(&path, body).unwrap();
    path
}

fn run_manifest(path: &Path) -> Output {
    conelift(&["run", path.to_str().unwrap()])
}

fn summary(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<PathBuf, Vec<u8>>) {
        for entry in fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), fs::read(&path).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(root, root, &mut out);
    out
}

#[test]
fn vl33_over_z3_has_nine_homs() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest(
        dir.path(),
        r#"{"input":{"family":{"tag":"VL","a":3,"b":3}},"group":{"kind":"cyclic","n":3},"options":{"trials":20},"output":"out"}"#,
    );
    let o = run_manifest(&m);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(&dir.path().join("out"));
    assert_eq!(s["homs"], 9);
    assert_eq!(s["lifts"].as_array().unwrap().len(), 9);
    assert_eq!(s["all_pass"], true);
    assert!(dir.path().join("out/lift_008/distance.json").exists());
}

#[test]
fn trivial_group_lift_is_the_base_code() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest(
        dir.path(),
        r#"{"input":{"family":{"tag":"VJ","a":3,"b":3}},"group":{"kind":"trivial"},"options":{"trials":0},"output":"out"}"#,
    );
    let o = run_manifest(&m);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = dir.path().join("out");
    for mat in ["hx", "hz"] {
        let base = fs::read(out.join(format!("base.{mat}.mtx"))).unwrap();
        let lift = fs::read(out.join(format!("lift_000/lift.{mat}.mtx"))).unwrap();
        assert_eq!(base, lift, "{mat}");
    }
}

#[test]
fn manifest_runs_are_reproducible() {
    let trees: Vec<_> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let m = manifest(
                dir.path(),
                r#"{"input":{"family":{"tag":"VJ","a":3,"b":3}},"group":{"kind":"cyclic","n":2},"options":{"trials":50,"seed":7},"output":"out"}"#,
            );
            assert!(run_manifest(&m).status.success());
            tree(&dir.path().join("out"))
        })
        .collect();
    assert!(trees[0].len() > 5);
    assert_eq!(trees[0], trees[1]);
}

#[test]
fn malformed_group_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest(
        dir.path(),
        r#"{"input":{"family":{"tag":"VL","a":3,"b":3}},"group":{"kind":"cyclic","n":0},"output":"out"}"#,
    );
    assert_eq!(run_manifest(&m).status.code(), Some(2));
    let m = manifest(dir.path(), r#"{"input":{"family":{"tag":"VL","a":3,"b":3}},"group":{"kind":"bogus"},"output":"o"}"#);
    assert_eq!(run_manifest(&m).status.code(), Some(2));
    let code = dir.path().join("c");
    assert!(conelift(&["family", "build", "--tag", "VL", "--a", "3", "--b", "3", "--out", code.to_str().unwrap()])
        .status
        .success());
    let o = conelift(&[
        "lift",
        "enumerate",
        code.join("VL_3_3.json").to_str().unwrap(),
        "--group",
        "NotAGroup",
        "--out",
        dir.path().join("l").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tiny_node_budget_exits_with_budget_code() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest(
        dir.path(),
        r#"{"input":{"family":{"tag":"VL","a":3,"b":3}},"group":{"kind":"named","name":"A4"},"options":{"node_budget":3,"trials":0},"output":"out"}"#,
    );
    assert_eq!(run_manifest(&m).status.code(), Some(3));
    assert_eq!(summary(&dir.path().join("out"))["status"], "budget");
}

#[test]
fn family_params_and_distance_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = conelift(&["family", "build", "--tag", "EL", "--a", "3", "--b", "3", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let params: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((params["n"].as_u64(), params["k"].as_u64()), (Some(10), Some(1)));

    let bundle = dir.path().join("EL_3_3.json");
    let o = conelift(&["params", bundle.to_str().unwrap()]);
    assert!(o.status.success());
    let params: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(params["d_x"]["value"], 2);

    let o = conelift(&["distance", bundle.to_str().unwrap(), "--seed", "3", "--trials", "200"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("\"value\": 2"), "{text}");
    // --seed is mandatory for the estimator
    assert_ne!(conelift(&["distance", bundle.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn hpc_of_two_cycles_is_toric() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = conelift(&["hpc", "build", "--cycle1", "3", "--cycle2", "3", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = conelift(&["params", dir.path().join("hpc.json").to_str().unwrap()]);
    let p: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((p["n"].as_u64(), p["k"].as_u64()), (Some(18), Some(2)));
    assert_eq!(p["d_x"]["value"], 3);
}

#[test]
fn lpc_equivalence_command_passes() {
    let o = conelift(&["verify", "lpc-equivalence", "--cycles", "2,3", "--groups", "Z2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
