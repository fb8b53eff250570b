use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcluster")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn tmp(name: &str) -> String {
    std::env::temp_dir()
        .join(format!("qcluster-{}-{name}", std::process::id()))
        .to_string_lossy()
        .into_owned()
}

#[test]
fn verify_gl2_passes() {
    let o = run(&["verify", "gl2", "--ell-window", "2", "--depth", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["exit_status"], 0);
    for r in v["records"].as_array().unwrap() {
        assert!(r["anchor"].as_str().is_some_and(|a| !a.is_empty()), "{r}");
    }
}

#[test]
fn verify_gl1_passes() {
    let o = run(&["verify", "gl1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let names: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"abelian/ab1") && names.contains(&"abelian/ab2"), "{names:?}");
}

#[test]
fn small_window_skips() {
    let o = run(&["verify", "gl2", "--ell-window", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["summary"]["skip"].as_u64().unwrap() > 0);
}

#[test]
fn reports_are_thread_independent() {
    let go = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qcluster"))
            .args(["verify", "all", "--depth", "4"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = go("1");
    assert_eq!(one, go("4"));
    assert_eq!(one, go("4"));
}

#[test]
fn pentagon_period() {
    let out = tmp("a2-mutated.seed");
    let o = run(&["mutate", "--seed", &data("a2.seed"), "--at", "1,2,1,2,1", "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 5);
    let load = |p: &str| {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        qcluster::canonical_form(&qcluster::QuantumSeed::from_json(&v).unwrap())
    };
    assert_eq!(load(&out), load(&data("a2.seed")));
    std::fs::remove_file(out).ok();
}

#[test]
fn double_mutation_is_identity() {
    let o = run(&["mutate", "--seed", &data("gl2.seed"), "--at", "3,3"]);
    assert_eq!(o.status.code(), Some(0));
    let start: Value = serde_json::from_str(&std::fs::read_to_string(data("gl2.seed")).unwrap()).unwrap();
    assert_eq!(json(&o), start);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["mutate", "--seed", &data("gl2.seed"), "--at", "9"]).status.code(), Some(2));
    assert_eq!(run(&["mutate", "--seed", &data("gl2.seed"), "--at", "0"]).status.code(), Some(2));
    assert_eq!(run(&["mutate", "--seed", "/nonexistent.seed", "--at", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "gl3"]).status.code(), Some(2));
    assert_eq!(run(&["pairs", "--n", "2", "--lo", "1", "--hi", "0"]).status.code(), Some(2));
    let bad = tmp("bad.seed");
    std::fs::write(&bad, "{\"rank\": 2}").unwrap();
    assert_eq!(run(&["explore", "--seed", &bad, "--depth", "1"]).status.code(), Some(2));
    std::fs::remove_file(bad).ok();
}

#[test]
fn explore_a2() {
    let out = tmp("a2-graph.json");
    let o = run(&["explore", "--seed", &data("a2.seed"), "--depth", "6", "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["nodes"], 5);
    let g: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(g["nodes"].as_object().map(|m| m.len()).or(g["nodes"].as_array().map(|a| a.len())), Some(5));
    std::fs::remove_file(out).ok();
}

#[test]
fn twist_acyclic() {
    let o = run(&["twist", "--seed", &data("acyclic3.seed")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["sequence"].as_array().unwrap().len(), 3);
}

#[test]
fn pairs_box() {
    let o = run(&["pairs", "--n", "2", "--lo", "0", "--hi", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 10);
    assert_eq!(v["bruteforce"], "10");
}

#[test]
fn char_abelian() {
    let o = run(&["char", "--case", "abelian", "--window", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["full_product_refused"], true);
    assert_eq!(run(&["char", "--case", "abelian", "--window", "2"]).status.code(), Some(2));
}
