use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ncg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncg")).args(args).env_remove("NCG_GENERATIONS").output().expect("run ncg")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = ncg(args);
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\nstderr: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().expect("exit code"), v)
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).expect("golden file")
}

fn statuses(v: &Value) -> Vec<(String, String)> {
    v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string()))
        .collect()
}

fn params(v: &Value) -> Vec<String> {
    v["result"]["params"].as_array().unwrap().iter().map(|p| p.as_str().unwrap().to_string()).collect()
}

#[test]
fn envelope_is_versioned() {
    let (code, v) = json(&["list-models"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["engine_version"], ncg_core::VERSION);
    assert_eq!(v["gamma_basis"], ncg_core::clifford::GAMMA_BASIS_NAME);
    assert_eq!(v["result"]["kind"], "models");
    assert_eq!(v["result"]["models"].as_array().unwrap().len(), ncg_core::models::CATALOG.len());
}

#[test]
fn check_sm_passes_everything() {
    let (code, v) = json(&["check", "sm"]);
    assert_eq!(code, 0);
    let s = statuses(&v);
    assert!(s.iter().any(|(n, _)| n == "first_order.all"));
    assert!(s.iter().all(|(_, st)| st == "PASS"), "{s:?}");
}

#[test]
fn check_btilde_majorana_is_constrained() {
    let (code, v) = json(&["check", "btilde", "--part=majorana"]);
    assert_eq!(code, 0);
    let c = v["result"]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "first_order.majorana").unwrap();
    assert_eq!(c["status"], "CONSTRAINED");
    assert_eq!(c["constraints"].as_array().unwrap().len(), 2);
}

#[test]
fn check_grand_free_is_unbounded() {
    let (code, v) = json(&["check", "grand", "--part=free"]);
    assert_eq!(code, 0);
    let s = statuses(&v);
    assert!(s.contains(&("dirac.bounded_commutators".into(), "FAIL".into())));
    assert!(s.contains(&("first_order.free".into(), "CONSTRAINED".into())));
}

#[test]
fn twist_by_grading_of_sm() {
    let (code, v) = json(&["check", "sm", "--twist=grading"]);
    assert_eq!(code, 0);
    let s = statuses(&v);
    assert!(s.contains(&("twist.r_implements_rho".into(), "PASS".into())));
    assert!(s.iter().all(|(_, st)| st == "PASS"), "{s:?}");
}

#[test]
fn twist_from_file() {
    let path = std::env::temp_dir().join(format!("ncg-twist-{}.json", std::process::id()));
    std::fs::write(&path, r#"[["-1","0","0","0"],["0","-1","0","0"],["0","0","1","0"],["0","0","0","1"]]"#).unwrap();
    let (code, v) = json(&["check", "manifold", "--twist", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert!(statuses(&v).iter().all(|(_, st)| st == "PASS"));
}

#[test]
fn generations_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ncg")).args(["check", "sm-finite"]).env("NCG_GENERATIONS", "3").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["dim"], 96);
    assert_eq!(v["result"]["generations"], 3);
}

#[test]
fn fluctuation_families() {
    let (code, v) = json(&["fluctuate", "manifold-twist"]);
    assert_eq!(code, 0);
    assert_eq!(params(&v), ["f0", "f1", "f2", "f3"]);
    let (_, v) = json(&["fluctuate", "ed"]);
    assert_eq!(params(&v), ["f0", "f1", "f2", "f3", "g0", "g1", "g2", "g3"]);
    let (_, v) = json(&["fluctuate", "sm", "--part=majorana"]);
    assert!(params(&v).is_empty());
    assert_eq!(v["result"]["transparent"], true);
}

#[test]
fn rho_product_needs_a_twist() {
    assert_eq!(ncg(&["fluctuate", "manifold", "--product=rho"]).status.code(), Some(2));
}

#[test]
fn action_templates() {
    for (model, template, matched) in [("doubled-manifold", "weyl", true), ("ed", "dirac", true), ("manifold-twist", "weyl", false)] {
        let (code, v) = json(&["action", model, "--template", template]);
        assert_eq!(code, 0, "{model}");
        assert_eq!(v["result"]["matched"], matched, "{model}");
        assert_eq!(v["result"]["antisymmetric"], true, "{model}");
    }
}

#[test]
fn single_manifold_residual_has_sigma2_shape() {
    let (_, v) = json(&["action", "manifold-twist", "--template=weyl"]);
    assert_eq!(v["result"]["residual"]["order0"], serde_json::json!([["0", "2*f0"], ["-2*f0", "0"]]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ncg(&["check", "no-such-model"]).status.code(), Some(2));
    assert_eq!(ncg(&["check", "sm", "--part=nope"]).status.code(), Some(2));
    assert_eq!(ncg(&["check", "sm", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(ncg(&["check", "manifold-twist", "--twist=grading"]).status.code(), Some(2));
    assert_eq!(ncg(&["check", "manifold", "--twist=/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(ncg(&["check", "grand", "--generations=3"]).status.code(), Some(2));
    assert_eq!(ncg(&["action", "sm", "--template=weyl"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = ncg(&["check", "btilde"]);
    let b = ncg(&["check", "btilde"]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn golden_fluctuation_report() {
    let out = ncg(&["fluctuate", "manifold-twist"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("fluctuate_manifold_twist.json"));
}

#[test]
fn golden_markdown_action_report() {
    let out = ncg(&["action", "doubled-manifold", "--template=weyl", "--format=md"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("action_doubled_manifold.md"));
}
