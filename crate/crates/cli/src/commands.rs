//! The three subcommands and their artifact assembly.
//!
//! Artifacts are built in memory first and written in one pass; if any write
//! fails, files already written for that run are removed so a failed
//! invocation leaves no partial output.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use swarmnn::benchmarks::{rastrigin, sphere};
use swarmnn::data::{load_csv, split_80_20, Dataset, DatasetSchema, Matrix};
use swarmnn::evaluation::{
    evaluate_predictions, render_report_csv, render_report_text, roc_to_csv, EvaluationReport,
};
use swarmnn::fdo::FdoConfig;
use swarmnn::model_file::ModelFile;
use swarmnn::network::{classify, ClassLabel, NetworkTopology, ParamVector};
use swarmnn::optimizer::{run, trace_to_csv, OptimizerConfig};
use swarmnn::training::{make_strategy, train, ModelKind, OptimizerKind, TrainingProblem};

use crate::errors::CliError;
use crate::{BenchArgs, EvaluateArgs, TrainArgs};

struct Artifacts {
    dir: PathBuf,
    files: Vec<(&'static str, String)>,
}

impl Artifacts {
    fn new(dir: PathBuf) -> Self {
        Self {
            dir,
            files: Vec::new(),
        }
    }

    fn add(&mut self, name: &'static str, contents: String) {
        self.files.push((name, contents));
    }

    fn write_all(self) -> Result<PathBuf, CliError> {
        fs::create_dir_all(&self.dir)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", self.dir.display())))?;
        let mut written: Vec<PathBuf> = Vec::new();
        for (name, contents) in &self.files {
            let path = self.dir.join(name);
            if let Err(e) = fs::write(&path, contents) {
                for earlier in &written {
                    let _ = fs::remove_file(earlier);
                }
                return Err(CliError::Io(format!(
                    "cannot write {}: {e}",
                    path.display()
                )));
            }
            written.push(path);
        }
        Ok(self.dir)
    }
}

fn manifest_text(entries: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (key, value) in entries {
        let _ = writeln!(out, "{key}={value}");
    }
    out
}

/// Raw outputs, predicted labels, and the report for one partition.
fn evaluate_partition(
    topology: &NetworkTopology,
    params: &ParamVector,
    features: &Matrix,
    labels: &[ClassLabel],
) -> Result<EvaluationReport, CliError> {
    let started = Instant::now();
    let outputs: Vec<f64> = (0..features.rows())
        .map(|row| topology.forward(params.values(), features.row(row)))
        .collect();
    let predicted: Vec<ClassLabel> = outputs.iter().map(|&o| classify(o)).collect();
    let mse = outputs
        .iter()
        .zip(labels)
        .map(|(output, label)| {
            let residual = label.encoded() - output;
            residual * residual
        })
        .sum::<f64>()
        / outputs.len() as f64;
    let mut report = evaluate_predictions(labels, &predicted, &outputs, mse)?;
    report.elapsed_seconds = started.elapsed().as_secs_f64();
    Ok(report)
}

fn gather_partition(dataset: &Dataset, indices: &[usize]) -> (Matrix, Vec<f64>, Vec<ClassLabel>) {
    let features = dataset.features().gather(indices);
    let labels: Vec<ClassLabel> = indices.iter().map(|&i| dataset.labels()[i]).collect();
    let targets: Vec<f64> = labels.iter().map(|l| l.encoded()).collect();
    (features, targets, labels)
}

pub fn cmd_train(args: TrainArgs) -> Result<(), CliError> {
    let kind: ModelKind = args.model.parse()?;
    let fdo_config = FdoConfig::new(args.weight_factor)?;
    let schema = DatasetSchema::from_toml_file(&args.schema)?;
    let fingerprint = schema.fingerprint();
    let dataset = load_csv(&args.dataset, &schema)?;
    let split = split_80_20(&dataset, args.split_seed)?;

    let topology = NetworkTopology::new(kind.network_kind(), dataset.features().cols())?;
    let (train_features, train_targets, train_labels) =
        gather_partition(&dataset, &split.train_indices);
    let (test_features, _, test_labels) = gather_partition(&dataset, &split.test_indices);

    let problem = TrainingProblem::new(topology, train_features, train_targets)?;
    let config = OptimizerConfig {
        agent_count: args.agents,
        max_iterations: args.iterations,
        rng_seed: args.seed,
    };
    let (params, run_result) = train(kind, &problem, &config, fdo_config)?;

    let train_report = evaluate_partition(&topology, &params, problem.features(), &train_labels)?;
    let test_report = evaluate_partition(&topology, &params, &test_features, &test_labels)?;

    let model = ModelFile {
        topology,
        seed: args.seed,
        optimizer: kind.name().to_string(),
        schema_fingerprint: fingerprint.clone(),
        params,
    };

    let dataset_name = args.dataset.display().to_string();
    let sections = [("training", &train_report), ("testing", &test_report)];
    let stats = dataset.stats();

    let out_dir = args.out.clone().unwrap_or_else(|| {
        PathBuf::from("runs").join(format!(
            "train_{}_s{}_p{}",
            kind.name(),
            args.seed,
            args.split_seed
        ))
    });
    let mut artifacts = Artifacts::new(out_dir);
    artifacts.add("model.txt", model.to_text());
    artifacts.add("trace.csv", trace_to_csv(&run_result));
    artifacts.add(
        "report.txt",
        render_report_text(kind.name(), &dataset_name, &sections),
    );
    artifacts.add("report.csv", render_report_csv(&sections));
    artifacts.add("roc_train.csv", roc_to_csv(&train_report.roc));
    artifacts.add("roc_test.csv", roc_to_csv(&test_report.roc));
    if args.export_encoded {
        artifacts.add("encoded.csv", dataset.to_encoded_csv(&schema));
    }
    artifacts.add(
        "manifest.txt",
        manifest_text(&[
            ("command", "train".into()),
            ("model", kind.name().into()),
            ("dataset_path", dataset_name.clone()),
            ("schema_path", args.schema.display().to_string()),
            ("schema_fingerprint", fingerprint),
            ("agents", args.agents.to_string()),
            ("iterations", args.iterations.to_string()),
            ("weight_factor", args.weight_factor.to_string()),
            ("seed", args.seed.to_string()),
            ("split_seed", args.split_seed.to_string()),
            ("export_encoded", args.export_encoded.to_string()),
            ("network_kind", kind.network_kind().to_string()),
            ("inputs", topology.inputs().to_string()),
            ("hidden", topology.hidden().to_string()),
            ("dimension", topology.parameter_count().to_string()),
            ("rows_read", stats.rows_read.to_string()),
            ("rows_kept", dataset.len().to_string()),
            ("dropped_invalid", stats.dropped_invalid.to_string()),
            ("dropped_duplicate", stats.dropped_duplicate.to_string()),
            ("train_size", split.train_indices.len().to_string()),
            ("test_size", split.test_indices.len().to_string()),
            (
                "elapsed_seconds",
                format!("{:.3}", run_result.elapsed_seconds),
            ),
        ]),
    );
    let dir = artifacts.write_all()?;

    println!(
        "trained {} on {} (dimension {}, agents {}, iterations {}, seed {}, split seed {})",
        kind.name(),
        dataset_name,
        topology.parameter_count(),
        args.agents,
        args.iterations,
        args.seed,
        args.split_seed
    );
    println!(
        "training rate {:.4}% | mse {:.7}",
        train_report.metrics.correct_rate_percent, train_report.mse
    );
    println!(
        "testing  rate {:.4}% | mse {:.7}",
        test_report.metrics.correct_rate_percent, test_report.mse
    );
    println!("artifacts in {}", dir.display());
    Ok(())
}

pub fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let model = ModelFile::read(&args.model_file)?;
    let schema = DatasetSchema::from_toml_file(&args.schema)?;
    let fingerprint = schema.fingerprint();
    if fingerprint != model.schema_fingerprint {
        return Err(CliError::Schema(format!(
            "schema drift: fingerprint {fingerprint} does not match the model's {}",
            model.schema_fingerprint
        )));
    }
    let dataset = load_csv(&args.dataset, &schema)?;
    if dataset.features().cols() != model.topology.inputs() {
        return Err(CliError::Config(format!(
            "dataset has {} features but the model expects {}",
            dataset.features().cols(),
            model.topology.inputs()
        )));
    }
    let split = split_80_20(&dataset, args.split_seed)?;
    let (test_features, _, test_labels) = gather_partition(&dataset, &split.test_indices);
    let report = evaluate_partition(&model.topology, &model.params, &test_features, &test_labels)?;

    let dataset_name = args.dataset.display().to_string();
    let sections = [("testing", &report)];
    let stats = dataset.stats();
    let out_dir = args.out.clone().unwrap_or_else(|| {
        PathBuf::from("runs").join(format!("evaluate_{}_p{}", model.optimizer, args.split_seed))
    });
    let mut artifacts = Artifacts::new(out_dir);
    artifacts.add(
        "evaluation_report.txt",
        render_report_text(&model.optimizer, &dataset_name, &sections),
    );
    artifacts.add("evaluation_report.csv", render_report_csv(&sections));
    artifacts.add("evaluation_roc.csv", roc_to_csv(&report.roc));
    artifacts.add(
        "evaluation_manifest.txt",
        manifest_text(&[
            ("command", "evaluate".into()),
            ("model_file", args.model_file.display().to_string()),
            ("model", model.optimizer.clone()),
            ("training_seed", model.seed.to_string()),
            ("dataset_path", dataset_name.clone()),
            ("schema_path", args.schema.display().to_string()),
            ("schema_fingerprint", fingerprint),
            ("split_seed", args.split_seed.to_string()),
            ("rows_read", stats.rows_read.to_string()),
            ("rows_kept", dataset.len().to_string()),
            ("dropped_invalid", stats.dropped_invalid.to_string()),
            ("dropped_duplicate", stats.dropped_duplicate.to_string()),
            ("test_size", split.test_indices.len().to_string()),
            ("elapsed_seconds", format!("{:.3}", report.elapsed_seconds)),
        ]),
    );
    let dir = artifacts.write_all()?;

    println!(
        "evaluated {} on {} ({} test rows)",
        model.optimizer,
        dataset_name,
        test_labels.len()
    );
    println!(
        "testing rate {:.4}% | mse {:.7} | auc {:.6}",
        report.metrics.correct_rate_percent, report.mse, report.roc.auc
    );
    println!("artifacts in {}", dir.display());
    Ok(())
}

type BenchFunction = fn(&[f64]) -> f64;

pub fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let optimizer: OptimizerKind = args.optimizer.parse()?;
    let (function, default_lower, default_upper): (BenchFunction, f64, f64) =
        match args.function.to_ascii_lowercase().as_str() {
            "sphere" => (sphere, -100.0, 100.0),
            "rastrigin" => (rastrigin, -5.12, 5.12),
            other => {
                return Err(CliError::Config(format!(
                    "unknown benchmark function '{other}' (expected sphere or rastrigin)"
                )))
            }
        };
    let lower = args.lower.unwrap_or(default_lower);
    let upper = args.upper.unwrap_or(default_upper);
    let space = swarmnn::optimizer::SearchSpace::new(args.dim, lower, upper)?;
    let config = OptimizerConfig {
        agent_count: args.agents,
        max_iterations: args.iterations,
        rng_seed: args.seed,
    };
    let mut strategy = make_strategy(optimizer, FdoConfig::default());
    let result = run(strategy.as_mut(), &space, &config, &function)?;

    let out_dir = args.out.clone().unwrap_or_else(|| {
        PathBuf::from("runs").join(format!(
            "bench_{}_{}_s{}",
            optimizer.name().to_ascii_lowercase(),
            args.function.to_ascii_lowercase(),
            args.seed
        ))
    });
    let mut artifacts = Artifacts::new(out_dir);
    artifacts.add("trace.csv", trace_to_csv(&result));
    artifacts.add(
        "manifest.txt",
        manifest_text(&[
            ("command", "bench".into()),
            ("optimizer", optimizer.name().into()),
            ("function", args.function.to_ascii_lowercase()),
            ("dim", args.dim.to_string()),
            ("agents", args.agents.to_string()),
            ("iterations", args.iterations.to_string()),
            ("seed", args.seed.to_string()),
            ("lower", lower.to_string()),
            ("upper", upper.to_string()),
            ("elapsed_seconds", format!("{:.3}", result.elapsed_seconds)),
        ]),
    );
    let dir = artifacts.write_all()?;

    println!(
        "bench {} on {}: best fitness {} after {} iterations",
        optimizer.name(),
        args.function.to_ascii_lowercase(),
        result.best_fitness,
        args.iterations
    );
    println!("trace in {}", dir.join("trace.csv").display());
    Ok(())
}
