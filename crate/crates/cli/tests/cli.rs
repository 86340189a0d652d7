//! End-to-end CLI behavior: artifact round-trips, failure classes, seed
//! semantics, and the bench command.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_swarmnn")
}

fn run(args: &[&str]) -> Output {
    Command::new(binary()).args(args).output().unwrap()
}

fn run_with_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(binary())
        .args(args)
        .env(key, value)
        .output()
        .unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

/// Forty-row fixture: three token columns, one numeric column, both classes.
/// Ages are unique so no row is dropped as a duplicate.
fn write_fixture(dir: &Path) -> (PathBuf, PathBuf) {
    let mut csv = String::from("fever,cough,fatigue,age,result\n");
    for i in 0..40 {
        let positive = i % 2 == 0;
        let yn = |bit: bool| if bit { "yes" } else { "no" };
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            yn(positive),
            yn(i % 3 == 0),
            yn(!positive),
            20 + i,
            if positive { "positive" } else { "negative" }
        );
    }
    let csv_path = dir.join("fixture.csv");
    fs::write(&csv_path, csv).unwrap();

    let schema = r#"
feature_columns = ["fever", "cough", "fatigue", "age"]
target_column = "result"
positive_tokens = ["yes", "positive"]
negative_tokens = ["no", "negative"]
numeric_columns = ["age"]
"#;
    let schema_path = dir.join("fixture.toml");
    fs::write(&schema_path, schema).unwrap();
    (csv_path, schema_path)
}

#[test]
fn evaluate_reproduces_the_training_run_test_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = write_fixture(dir.path());
    let train_out = dir.path().join("train");
    let output = run(&[
        "train",
        "--model",
        "FDO_CMLP",
        "--dataset",
        csv.to_str().unwrap(),
        "--schema",
        schema.to_str().unwrap(),
        "--iterations",
        "5",
        "--seed",
        "9",
        "--split-seed",
        "2",
        "--out",
        train_out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));

    let eval_out = dir.path().join("eval");
    let output = run(&[
        "evaluate",
        "--model-file",
        train_out.join("model.txt").to_str().unwrap(),
        "--dataset",
        csv.to_str().unwrap(),
        "--schema",
        schema.to_str().unwrap(),
        "--split-seed",
        "2",
        "--out",
        eval_out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));

    let train_report = fs::read_to_string(train_out.join("report.csv")).unwrap();
    let train_testing_row = train_report
        .lines()
        .find(|l| l.starts_with("testing,"))
        .unwrap();
    let eval_report = fs::read_to_string(eval_out.join("evaluation_report.csv")).unwrap();
    let eval_testing_row = eval_report
        .lines()
        .find(|l| l.starts_with("testing,"))
        .unwrap();
    assert_eq!(train_testing_row, eval_testing_row);
}

#[test]
fn evaluate_refuses_a_drifted_schema() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = write_fixture(dir.path());
    let train_out = dir.path().join("train");
    let output = run(&[
        "train",
        "--model",
        "GWO_MLP",
        "--dataset",
        csv.to_str().unwrap(),
        "--schema",
        schema.to_str().unwrap(),
        "--iterations",
        "3",
        "--out",
        train_out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));

    // Same columns, one renamed: different fingerprint.
    let drifted = fs::read_to_string(&schema)
        .unwrap()
        .replace("\"cough\"", "\"dry_cough\"");
    let drifted_path = dir.path().join("drifted.toml");
    fs::write(&drifted_path, drifted).unwrap();

    let output = run(&[
        "evaluate",
        "--model-file",
        train_out.join("model.txt").to_str().unwrap(),
        "--dataset",
        csv.to_str().unwrap(),
        "--schema",
        drifted_path.to_str().unwrap(),
        "--out",
        dir.path().join("eval").to_str().unwrap(),
    ]);
    assert!(!output.status.success());
    let stderr = stderr_of(&output);
    assert!(stderr.contains("schema"), "{stderr}");
    assert!(stderr.contains("drift"), "{stderr}");
}

#[test]
fn evaluate_with_another_split_seed_is_a_different_experiment() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = write_fixture(dir.path());
    let train_out = dir.path().join("train");
    let output = run(&[
        "train",
        "--model",
        "GWO_MLP",
        "--dataset",
        csv.to_str().unwrap(),
        "--schema",
        schema.to_str().unwrap(),
        "--iterations",
        "3",
        "--split-seed",
        "2",
        "--out",
        train_out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));

    let eval_out = dir.path().join("eval7");
    let output = run(&[
        "evaluate",
        "--model-file",
        train_out.join("model.txt").to_str().unwrap(),
        "--dataset",
        csv.to_str().unwrap(),
        "--schema",
        schema.to_str().unwrap(),
        "--split-seed",
        "7",
        "--out",
        eval_out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let manifest = fs::read_to_string(eval_out.join("evaluation_manifest.txt")).unwrap();
    assert!(manifest.contains("split_seed=7"));
}

#[test]
fn unknown_model_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = write_fixture(dir.path());
    let output = run(&[
        "train",
        "--model",
        "PSO_MLP",
        "--dataset",
        csv.to_str().unwrap(),
        "--schema",
        schema.to_str().unwrap(),
    ]);
    assert!(!output.status.success());
    assert!(stderr_of(&output).contains("(config)"));
}

#[test]
fn undersized_mgwo_population_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = write_fixture(dir.path());
    let output = run(&[
        "train",
        "--model",
        "MGWO_MLP",
        "--agents",
        "3",
        "--dataset",
        csv.to_str().unwrap(),
        "--schema",
        schema.to_str().unwrap(),
        "--out",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert!(!output.status.success());
    let stderr = stderr_of(&output);
    assert!(stderr.contains("(config)"), "{stderr}");
    assert!(
        stderr.lines().count() == 1,
        "diagnostic must be one line: {stderr}"
    );
}

#[test]
fn missing_dataset_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let (_, schema) = write_fixture(dir.path());
    let output = run(&[
        "train",
        "--model",
        "GWO_MLP",
        "--dataset",
        dir.path().join("nope.csv").to_str().unwrap(),
        "--schema",
        schema.to_str().unwrap(),
    ]);
    assert!(!output.status.success());
    assert!(stderr_of(&output).contains("(io)"));
}

#[test]
fn export_encoded_writes_the_audit_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = write_fixture(dir.path());
    let out = dir.path().join("out");
    let output = run(&[
        "train",
        "--model",
        "GWO_MLP",
        "--dataset",
        csv.to_str().unwrap(),
        "--schema",
        schema.to_str().unwrap(),
        "--iterations",
        "2",
        "--export-encoded",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let encoded = fs::read_to_string(out.join("encoded.csv")).unwrap();
    let mut lines = encoded.lines();
    assert_eq!(lines.next().unwrap(), "fever,cough,fatigue,age,result");
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        for &cell in &cells[..3] {
            assert!(cell == "0" || cell == "1", "binary cell {cell}");
        }
        assert!(cells[4] == "1" || cells[4] == "2");
    }
}

#[test]
fn output_directory_env_override_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = write_fixture(dir.path());
    let out = dir.path().join("env_out");
    let output = run_with_env(
        &[
            "train",
            "--model",
            "GWO_MLP",
            "--dataset",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--iterations",
            "2",
        ],
        "SWARMNN_OUTPUT_DIR",
        &out,
    );
    assert!(output.status.success(), "{}", stderr_of(&output));
    assert!(out.join("model.txt").exists());
}

#[test]
fn bench_writes_a_monotone_trace_of_the_requested_length() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench");
    let output = run(&[
        "bench",
        "gwo",
        "sphere",
        "--dim",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let trace = fs::read_to_string(out.join("trace.csv")).unwrap();
    let values: Vec<f64> = trace
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 50);
    for pair in values.windows(2) {
        assert!(pair[1] <= pair[0]);
    }
}

#[test]
fn bench_fdo_improves_on_the_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench");
    let output = run(&[
        "bench",
        "fdo",
        "sphere",
        "--dim",
        "2",
        "--iterations",
        "200",
        "--seed",
        "7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let trace = fs::read_to_string(out.join("trace.csv")).unwrap();
    let values: Vec<f64> = trace
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 200);
    assert!(values.last().unwrap() < values.first().unwrap());
}

#[test]
fn bench_accepts_the_minimum_mgwo_population() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench");
    let output = run(&[
        "bench",
        "mgwo",
        "rastrigin",
        "--agents",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    assert!(out.join("trace.csv").exists());
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("optimizer=MGWO"));
    assert!(manifest.contains("agents=4"));
}

#[test]
fn bench_rejects_unknown_names() {
    let output = run(&["bench", "simplex", "sphere"]);
    assert!(!output.status.success());
    assert!(stderr_of(&output).contains("(config)"));

    let output = run(&["bench", "gwo", "ackley"]);
    assert!(!output.status.success());
    assert!(stderr_of(&output).contains("(config)"));
}
