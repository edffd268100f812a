use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn hemiring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hemiring")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = hemiring(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn leaves(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) if !m.is_empty() => m.iter().for_each(|(k, x)| leaves(&format!("{prefix}.{k}"), x, out)),
        Value::Array(a) if !a.is_empty() => a.iter().enumerate().for_each(|(i, x)| leaves(&format!("{prefix}.{i}"), x, out)),
        _ => out.push(prefix.to_string()),
    }
}

#[test]
fn geometric_half() {
    let (code, v) = json(&["geom", "--structure", "rational", "--r", "1/2", "--terms", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    let p = &v["payload"];
    assert_eq!(p["sum"], "2");
    assert_eq!(p["partial_sum"]["value"], "1048575/524288");
    assert_eq!(p["partial_sum"]["gap"], "1/524288");
    assert_eq!(p["validation"]["pass"], true);
}

#[test]
fn zx_half_has_no_null_certificate() {
    let out = hemiring(&["geom", "--structure", "zx", "--r", "1/2"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("does not tend to 0 in zx"), "{err}");
    let (code, v) = json(&["geom", "--structure", "zx", "--r", "1/2"]);
    assert_eq!(code, 3);
    assert_eq!(v["payload"]["error"], "NoNullCertificate");
    assert_eq!(v["status"], "precondition_failure");
}

#[test]
fn bernoulli_ones() {
    let (code, v) = json(&["bernoulli", "--structure", "rational", "--xs", "1;1;1", "--mode", "ring_all_nonneg"]);
    assert_eq!(code, 0);
    let e = &v["payload"]["evaluations"][0];
    assert_eq!((e["lhs"].as_str(), e["rhs"].as_str()), (Some("8"), Some("4")));
    assert_eq!(v["payload"]["pass"], true);
    let (code, _) = json(&["bernoulli", "--structure", "rational", "--xs", "-2", "--mode", "ring_all_nonpos"]);
    assert_eq!(code, 3);
    let (code, v) = json(&["bernoulli", "--structure", "rational", "--xs", "-1/2;3", "--mode", "single_power:3"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["evaluations"][1]["lhs"], "64");
}

#[test]
fn headers_carry_defaults() {
    let (_, v) = json(&["witness", "density", "--structure", "rational", "--epsilon", "1/3"]);
    assert_eq!(v["header"]["seed"], 42);
    assert_eq!(v["header"]["samples"], 1000);
    assert_eq!(v["header"]["depth"], 64);
    assert_eq!(v["payload"]["holds"], true);
}

#[test]
fn json_is_byte_stable() {
    let a = hemiring(&["laws", "--structure", "zx", "--samples", "200", "--json"]);
    let b = hemiring(&["laws", "--structure", "zx", "--samples", "200", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_matches_json_fields() {
    let cases: [&[&str]; 4] = [
        &["geom", "--structure", "zx", "--r", "1/X", "--terms", "3"],
        &["seq", "eval", "--structure", "zx", "--term", "1/X^n", "--from", "1", "--to", "3", "--partial-sums"],
        &["witness", "shrink", "--structure", "z1p:3", "--alpha", "1/9", "--m", "5"],
        &["ratio", "--structure", "rational", "--x0-norm", "1", "--r", "1/3", "--eps", "1/100"],
    ];
    for args in cases {
        let (_, v) = json(args);
        let table = String::from_utf8(hemiring(args).stdout).unwrap();
        let mut keys = Vec::new();
        leaves("payload", &v["payload"], &mut keys);
        leaves("header", &v["header"], &mut keys);
        let rows: Vec<&str> = table.lines().map(|l| l.split_whitespace().next().unwrap_or("")).collect();
        assert_eq!(rows.len(), keys.len() + 2, "{args:?}");
        for k in &keys {
            assert!(rows.contains(&k.as_str()), "{args:?}: {k} missing");
        }
    }
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(hemiring(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(hemiring(&["geom", "--structure", "rational"]).status.code(), Some(4));
    let out = hemiring(&["geom", "--structure", "rational", "--r", "1/0.5"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    assert_eq!(hemiring(&["laws", "--structure", "z1p:4"]).status.code(), Some(4));
    assert_eq!(hemiring(&["witness", "density", "--structure", "rational"]).status.code(), Some(4));
}

#[test]
fn condensation_commands() {
    for dir in ["forward", "backward", "roundtrip"] {
        let (code, v) = json(&["condense", dir, "--structure", "rational", "--term", "(1/2)^n", "--eps", "1/10,1/10000", "--depth", "32"]);
        assert_eq!(code, 0, "{dir}: {v}");
        assert_eq!(v["payload"]["validation"]["pass"], true);
    }
    let (code, v) = json(&["condense", "forward", "--structure", "rational", "--term", "n", "--depth", "8"]);
    assert_eq!(code, 3);
    assert_eq!(v["payload"]["error"], "NotApplicable");
}

#[test]
fn certificate_files() {
    let dir = tempfile::tempdir().unwrap();
    let fake = dir.path().join("fake.json");
    std::fs::File::create(&fake)
        .unwrap()
        .write_all(br#"{"structure":"zx","sequence":{"geometric":"1/2"},"limit":"0","modulus":{"constant":1}}"#)
        .unwrap();
    let (code, v) = json(&["cert", "validate", "--file", fake.to_str().unwrap(), "--eps", "1/X", "--depth", "16"]);
    assert_eq!(code, 2);
    assert_eq!(v["payload"]["report"]["violation_count"], 17);
    assert_eq!(v["header"]["structure"], "zx");

    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"structure":"rational","sequence":{"geometric":"1/2"},"limit":"0","modulus":{"bernoulli":"1/2"}}"#).unwrap();
    let (code, _) = json(&["cert", "validate", "--file", good.to_str().unwrap(), "--depth", "64"]);
    assert_eq!(code, 0);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{").unwrap();
    assert_eq!(json(&["cert", "validate", "--file", broken.to_str().unwrap()]).0, 4);
}

#[test]
fn norm_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gauss.json");
    std::fs::write(&path, r#"{"n":2,"field":"rational","gamma":[[["1","0"],["0","1"]],[["0","1"],["-1","0"]]]}"#).unwrap();
    let (code, v) = json(&["norm", "build", "--constants", path.to_str().unwrap(), "--check-samples", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["factor"], "2");
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"n":0,"gamma":[]}"#).unwrap();
    assert_eq!(json(&["norm", "build", "--constants", empty.to_str().unwrap()]).0, 3);

    let (code, _) = json(&["norm", "check", "--kind", "padic:5", "--structure", "rational", "--samples", "100"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["norm", "check", "--kind", "abs", "--structure", "zx", "--samples", "100"]);
    assert_eq!(code, 0);
    assert_eq!(json(&["norm", "check", "--kind", "padic:5", "--structure", "zx", "--samples", "10"]).0, 3);
}
