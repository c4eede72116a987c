//! End-to-end tests of the command binary: exit codes, report determinism,
//! emitted files, and the file-driven workflows.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qbohr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbohr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qbohr-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn ap_test_exit_codes_follow_the_contract() {
    let yes = qbohr(&["ap-test", "Z", "--expr", "char(2)", "--horizon", "8"]);
    assert_eq!(yes.status.code(), Some(0));
    let text = stdout(&yes);
    assert!(text.contains("verdict: yes rank 1"), "{text}");
    assert!(text.contains("status: 0"), "{text}");

    let no = qbohr(&["ap-test", "Z", "--expr", "delta(0)", "--horizon", "8"]);
    assert_eq!(no.status.code(), Some(1));
    let text = stdout(&no);
    assert!(text.contains("rank-profile: 0:1 1:3 2:5"), "{text}");

    let usage = qbohr(&["ap-test", "Z", "--expr", "char(2"]);
    assert_eq!(usage.status.code(), Some(3));
    let err = String::from_utf8_lossy(&usage.stderr).into_owned();
    assert!(err.contains("column 7"), "{err}");
}

#[test]
fn check_axioms_passes_on_builtins() {
    for model in ["Z", "C(Z/6)"] {
        let out = qbohr(&["check-axioms", model, "--window", "3"]);
        assert_eq!(out.status.code(), Some(0), "{model}");
        let text = stdout(&out);
        assert_eq!(text.matches(": pass").count(), 6, "{model}: {text}");
    }
    let full = qbohr(&["check-axioms", "dual(S3)", "--window", "full"]);
    assert_eq!(full.status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let first = qbohr(&["ap-test", "Z", "--expr", "poly(1)*char(2)", "--horizon", "6"]);
    let second = qbohr(&["ap-test", "Z", "--expr", "poly(1)*char(2)", "--horizon", "6"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
}

#[test]
fn lemma_l_reports_both_verdicts() {
    let independent = qbohr(&[
        "lemma-l",
        "Z",
        "--expr",
        "char(1)",
        "--expr",
        "char(2)",
        "--horizon",
        "6",
    ]);
    assert_eq!(independent.status.code(), Some(0));
    assert!(stdout(&independent).contains("verdict: independent"));

    let dependent = qbohr(&[
        "lemma-l",
        "Z",
        "--expr",
        "char(2)",
        "--expr",
        "2*char(2)",
        "--horizon",
        "6",
    ]);
    assert_eq!(dependent.status.code(), Some(1));
    let text = stdout(&dependent);
    assert!(text.contains("verdict: dependent"), "{text}");
    assert!(text.contains("coefficients: 1 -1/2"), "{text}");
}

#[test]
fn slice_and_haar_commands() {
    let slice = qbohr(&[
        "slice",
        "Z",
        "--expr",
        "char(2)",
        "--functional",
        "eval@3",
    ]);
    assert_eq!(slice.status.code(), Some(0));
    let text = stdout(&slice);
    assert!(text.contains("slice: (8)*char(2)"), "{text}");

    let haar = qbohr(&["haar", "Z", "--window", "3"]);
    assert_eq!(haar.status.code(), Some(0));
    assert!(stdout(&haar).contains("weights: uniform 1"));

    let haar_s3 = qbohr(&["haar", "dual(S3)", "--window", "full"]);
    assert_eq!(haar_s3.status.code(), Some(0));
    let text = stdout(&haar_s3);
    assert!(text.contains("weight std: [2,0;0,2]"), "{text}");
}

#[test]
fn emitted_decompositions_round_trip() {
    let emit = tmp_path("decomposition.json");
    let out = qbohr(&[
        "ap-test",
        "Z",
        "--expr",
        "poly(1)*char(2)",
        "--horizon",
        "6",
        "--emit",
        emit.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&emit).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["rank"], 2);
    assert_eq!(value["x_legs"].as_array().unwrap().len(), 2);
    std::fs::remove_file(&emit).ok();
}

#[test]
fn corep_check_and_bohr_via_files() {
    let corep = tmp_path("jordan.json");
    std::fs::write(&corep, r#"{"jordan": {"base": "2", "size": 2}}"#).unwrap();
    let check = qbohr(&[
        "corep-check",
        "Z",
        "--file",
        corep.to_str().unwrap(),
        "--window",
        "3",
    ]);
    assert_eq!(check.status.code(), Some(0), "{}", stdout(&check));
    assert!(stdout(&check).contains("verdict: valid"));

    let bad = tmp_path("bad-corep.json");
    std::fs::write(
        &bad,
        r#"{"size": 1, "entries": [["char(2) + delta(0)"]]}"#,
    )
    .unwrap();
    let invalid = qbohr(&[
        "corep-check",
        "Z",
        "--file",
        bad.to_str().unwrap(),
        "--window",
        "3",
    ]);
    assert_eq!(invalid.status.code(), Some(1));
    assert!(stdout(&invalid).contains("verdict: invalid"));

    let pres = tmp_path("presentation.json");
    let bohr = qbohr(&[
        "bohr",
        "Z",
        "--corep",
        corep.to_str().unwrap(),
        "--degree",
        "2",
        "--emit",
        pres.to_str().unwrap(),
    ]);
    assert_eq!(bohr.status.code(), Some(0), "{}", stdout(&bohr));
    let text = std::fs::read_to_string(&pres).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(value["labels"].as_array().unwrap().len() >= 3);
    std::fs::remove_file(&corep).ok();
    std::fs::remove_file(&bad).ok();
    std::fs::remove_file(&pres).ok();
}

#[test]
fn factorize_via_files() {
    let hopf = tmp_path("laurent.json");
    std::fs::write(&hopf, r#"{"laurent": true}"#).unwrap();
    let images = tmp_path("images.json");
    std::fs::write(&images, r#"{"t": "char(2)", "t_inv": "char(1/2)"}"#).unwrap();
    let ok = qbohr(&[
        "factorize",
        "Z",
        "--hopf",
        hopf.to_str().unwrap(),
        "--images",
        images.to_str().unwrap(),
    ]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("factored through the almost periodic subalgebra"));

    let bad_images = tmp_path("bad-images.json");
    std::fs::write(
        &bad_images,
        r#"{"t": "char(2) + delta(0)", "t_inv": "char(1/2) - 1/2*delta(0)"}"#,
    )
    .unwrap();
    let rejected = qbohr(&[
        "factorize",
        "Z",
        "--hopf",
        hopf.to_str().unwrap(),
        "--images",
        bad_images.to_str().unwrap(),
    ]);
    assert_eq!(rejected.status.code(), Some(1));
    assert!(stdout(&rejected).contains("intertwining"));
    std::fs::remove_file(&hopf).ok();
    std::fs::remove_file(&images).ok();
    std::fs::remove_file(&bad_images).ok();
}

#[test]
fn model_files_load_like_builtins() {
    // serialize a builtin, reload it through the file path, and run the
    // axiom suite on the file-loaded model
    let model = qbohr_core::model::builtin_model("dual(S3)").unwrap();
    let value = qbohr_core::io::model_to_json(&model);
    let path = tmp_path("dual-s3.json");
    std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap()).unwrap();
    let out = qbohr(&["check-axioms", path.to_str().unwrap(), "--window", "full"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    std::fs::remove_file(&path).ok();
}
