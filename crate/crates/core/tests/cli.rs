use std::process::{Command, Output};

use quadric_cr::format::parse_model;
use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadric-cr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = cli(&all);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("valid JSON"))
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("quadric-cr-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn classify_codim3_example() {
    let (code, v) = json(&["classify", "catalog:beloshapka-c6-codim3"]);
    assert_eq!(code, 0);
    assert_eq!(v["tumanov"]["holds"], false);
    assert_eq!(v["beloshapka_nondegenerate"], true);
}

#[test]
fn classify_codim4_certificate() {
    let (code, v) = json(&["classify", "catalog:ber-c6-codim4", "--relation-degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["sesqui_status"]["verdict"], "NotDominant");
    assert_eq!(v["sesqui_status"]["certificate_degree"], 2);
    assert_eq!(v["sesqui_status"]["certificate"], "4*t1*t2 - t3^2 - t4^2");
}

#[test]
fn classify_zero_model_prints_witness() {
    let path = temp_file("zero.json", r#"{"n": 2, "d": 1, "matrices": [[["0", "0"], ["0", "0"]]]}"#);
    let (code, v) = json(&["classify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    for k in ["condition_a", "condition_b", "cone_generating", "finite_type_two", "beloshapka_nondegenerate"] {
        assert_eq!(v[k], false, "{k}");
    }
    assert_eq!(v["tumanov"]["holds"], false);
    assert_eq!(v["witnesses"]["lambda"], serde_json::json!(["1"]));
    assert!(v["witnesses"]["kernel_vector"].is_array());
    let text = stdout(&cli(&["classify", path.to_str().unwrap()]));
    assert!(text.contains("witness:"));
}

#[test]
fn non_hermitian_input_names_the_entry() {
    let path = temp_file(
        "bad.json",
        r#"{"n": 2, "d": 2, "matrices": [[["1","0"],["0","1"]], [["0",{"re":"1","im":"1"}],["1","0"]]]}"#,
    );
    let o = cli(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("matrix 2"), "{err}");
    assert!(err.contains("row 2, col 1") || err.contains("row 1, col 2"), "{err}");
}

#[test]
fn aut_reports_bounds_and_stability() {
    let (code, v) = json(&["aut", "catalog:hyperquadric-c2", "--cap", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 8);
    assert_eq!(v["stabilization"]["stable"], true);
    assert_eq!(v["degree_bounds"]["pass"], true);
    let (code, v) = json(&["aut", "catalog:beloshapka-c6-codim3", "--cap", "5", "--route", "general"]);
    assert_eq!(code, 0);
    assert_eq!(v["degree_bounds"]["pass"], true);
    assert_eq!(v["dimension"], 28);
}

#[test]
fn aut_on_flat_model_fails_stabilization() {
    let o = cli(&["aut", "catalog:degenerate-flat", "--cap", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("stabilization: FAILED"));
}

#[test]
fn aut_rejects_small_cap() {
    assert_eq!(cli(&["aut", "catalog:hyperquadric-c2", "--cap", "1"]).status.code(), Some(2));
}

#[test]
fn charvar_verdicts() {
    let (_, v) = json(&["charvar", "catalog:beloshapka-c6-codim3", "--zeta", "0,0,0"]);
    assert_eq!(v["characteristic"], true);
    let (_, v) = json(&["charvar", "catalog:beloshapka-c6-codim3", "--zeta", "1,0,0"]);
    assert_eq!(v["characteristic"], false);
    let o = cli(&["charvar", "catalog:degenerate-flat", "--zeta", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "zeta = (1): characteristic");
    assert_eq!(cli(&["charvar", "catalog:degenerate-flat", "--zeta", "1+"]).status.code(), Some(2));
}

#[test]
fn catalog_list_and_round_trip() {
    let (code, v) = json(&["catalog", "list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in quadric_cr::catalog::NAMES {
        assert!(names.contains(&n), "{n}");
    }
    for n in quadric_cr::catalog::NAMES {
        let text = stdout(&cli(&["catalog", "show", n]));
        assert_eq!(parse_model(&text).unwrap(), quadric_cr::catalog::get(n).unwrap().model);
    }
    assert_eq!(cli(&["catalog", "show", "nosuch"]).status.code(), Some(2));
}

#[test]
fn harness_summaries() {
    let (code, v) = json(&["harness", "--count", "500", "--n-max", "3", "--d-max", "4", "--bound", "2", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["total_violations"], 0);
    let (code, v) = json(&["harness", "--count", "100", "--n-max", "2", "--d-max", "5", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["total_violations"], 0);
    let a = stdout(&cli(&["harness", "--count", "1", "--seed", "9"]));
    let b = stdout(&cli(&["harness", "--count", "1", "--seed", "9"]));
    assert_eq!(a, b);
}

#[test]
fn no_condition_a_beyond_n_squared() {
    // fixed n = 2, d = 5 via random model files
    for seed in 0..100 {
        let s = seed.to_string();
        let text = stdout(&cli(&["random", "--n", "2", "--d", "5", "--seed", &s]));
        let path = temp_file(&format!("r{seed}.json"), &text);
        let (_, v) = json(&["classify", path.to_str().unwrap(), "--relation-degree", "1"]);
        assert_eq!(v["condition_a"], false);
        let _ = std::fs::remove_file(path);
    }
}

#[test]
fn text_is_a_projection_of_json() {
    for input in ["catalog:corner-a-not-b", "catalog:flat-b-not-a", "catalog:diag-pair-c4"] {
        let (_, v) = json(&["classify", input]);
        let text = stdout(&cli(&["classify", input]));
        for (key, label) in [("condition_a", "condition (a)"), ("condition_b", "condition (b)")] {
            assert!(text.contains(&format!("{label}: {}", v[key])), "{input} {key}");
        }
        assert!(text.contains(v["sesqui_status"]["verdict"].as_str().unwrap()));
    }
}
