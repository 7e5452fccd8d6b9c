use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use cellcut::ComplexDocument;
use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(format!("{}.json", name));
    p.to_string_lossy().into_owned()
}

fn cellcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellcut")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cellcut"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

fn factors(group: &Value) -> Vec<i64> {
    group["invariant_factors"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn groups_of_the_projective_plane() {
    let r = json(&cellcut(&["groups", "--json", &data("rp2")]));
    let res = &r["results"];
    assert_eq!(factors(&res["critical"]), [4]);
    assert_eq!(factors(&res["cutflow"]), [2]);
    assert_eq!(factors(&res["cocritical"]), Vec::<i64>::new());
    assert_eq!(res["cocritical"]["display"], "0");
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn tau_of_vic() {
    let r = json(&cellcut(&["tau", "--json", &data("vic-6-2")]));
    assert_eq!(r["results"]["tau"], 40);
    assert_eq!(r["results"]["tau_by_determinant"], 40);
}

#[test]
fn verify_passes_on_fixtures() {
    for name in ["triangle", "rp2", "vic-6-2", "bipyramid", "double-ravioli", "three-cell"] {
        let out = cellcut(&["verify", &data(name)]);
        let text = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{}:\n{}", name, text);
        assert!(text.contains(" 0 failed"), "{}", text);
        assert!(!text.contains("FAIL"), "{}", text);
    }
}

#[test]
fn cut_vectors_are_label_maps() {
    let r = json(&cellcut(&["cutbasis", "--json", "--forest", "s2,s7", &data("double-ravioli")]));
    let res = &r["results"];
    assert_eq!(res["mu"], 14);
    let first = &res["vectors"][0];
    assert_eq!(first["sigma"], "s2");
    let cal = first["calibrated"].as_object().unwrap();
    let keys: Vec<&String> = cal.keys().collect();
    assert_eq!(keys, ["s2", "s3", "s5", "s7"]);
    let vals: Vec<i64> = cal.values().map(|v| v.as_i64().unwrap()).collect();
    assert!(vals == [14, 21, 0, 0] || vals == [-14, -21, 0, 0], "{:?}", vals);
}

#[test]
fn default_forest_is_the_first_one() {
    let r = json(&cellcut(&["flowbasis", "--json", &data("three-cell")]));
    assert_eq!(r["results"]["forest"], serde_json::json!(["s1", "s2"]));
    let flow: Vec<i64> =
        r["results"]["vectors"][0]["calibrated"].as_object().unwrap().values().map(|v| v.as_i64().unwrap()).collect();
    assert_eq!(flow, [1, -1, 2]);
}

#[test]
fn reports_are_deterministic() {
    for cmd in ["forests", "groups", "bounds", "cutbasis"] {
        let a = cellcut(&[cmd, "--json", &data("bipyramid")]);
        let b = cellcut(&[cmd, "--json", &data("bipyramid")]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn homology_reads_stdin() {
    let out = with_stdin(&["homology", "--dim", "1", "-"], r#"{"simplicial_facets": [[1, 2], [2, 3], [1, 3]]}"#);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("1: Z\n"));
}

#[test]
fn input_errors_exit_2() {
    let out = with_stdin(&["tau", "-"], "{\"simplicial_facets\": [[1, 2]\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let bad = r#"{"boundaries": [{"dim": 0, "cells": ["a", "b"]},
                                 {"dim": 1, "cells": ["e"], "matrix": [[1], [1]]}]}"#;
    let out = with_stdin(&["tau", "-"], bad);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension 1 at (0, 0)"));

    let out = with_stdin(&["tau", "-"], r#"{"boundaries": [{"dim": 0, "cells": "a"}]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("boundaries[0].cells"));

    let out = cellcut(&["cutbasis", "--forest", "s2,s3", &data("double-ravioli")]);
    assert_eq!(out.status.code(), Some(2));
    let out = cellcut(&["cutbasis", "--forest", "nope", &data("double-ravioli")]);
    assert_eq!(out.status.code(), Some(2));
    let out = cellcut(&["tau", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumeration_cap_exits_3() {
    let doc = cellcut(&["random", "--seed", "1", "--vertices", "7", "--dim", "2", "--prob", "1"]);
    assert!(doc.status.success());
    let text = String::from_utf8(doc.stdout).unwrap();
    let out = with_stdin(&["forests", "-"], &text);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CELLCUT_MAX_FACETS"));
    let small = Command::new(env!("CARGO_BIN_EXE_cellcut"))
        .args(["tau", &data("bipyramid")])
        .env("CELLCUT_MAX_FACETS", "3")
        .output()
        .unwrap();
    assert_eq!(small.status.code(), Some(3));
}

#[test]
fn random_is_deterministic_and_round_trips() {
    let args = ["random", "--seed", "1", "--vertices", "5", "--dim", "2", "--prob", "0.5"];
    let a = cellcut(&args);
    let b = cellcut(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let doc = ComplexDocument::parse(&text).unwrap();
    assert_eq!(doc.emit(), text);
    let out = cellcut(&["random", "--vertices", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn complete_complex_on_six_vertices() {
    let out = cellcut(&["random", "--seed", "4", "--vertices", "6", "--dim", "2", "--prob", "1"]);
    let doc = ComplexDocument::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(doc.to_complex().unwrap(), cellcut_core::fixtures::complete_2_complex(6));
}
