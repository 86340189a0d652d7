//! Experiment harness for swarm-trained tabular classifiers.

mod commands;
mod errors;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "swarmnn",
    version,
    about = "Train and evaluate swarm-optimized tabular classifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train one model configuration on a CSV dataset
    Train(TrainArgs),
    /// Evaluate a saved model on a dataset's test partition
    Evaluate(EvaluateArgs),
    /// Run an optimizer on a benchmark function and export its trace
    Bench(BenchArgs),
}

#[derive(Args)]
pub struct TrainArgs {
    /// Model configuration: GWO_MLP, GWO_CMLP, MGWO_MLP, FDO_MLP, or FDO_CMLP
    #[arg(long)]
    pub model: String,
    /// Dataset CSV (UTF-8, comma-delimited, header row)
    #[arg(long)]
    pub dataset: PathBuf,
    /// Dataset schema file (TOML)
    #[arg(long)]
    pub schema: PathBuf,
    /// Number of search agents
    #[arg(long, default_value_t = 10)]
    pub agents: usize,
    /// Number of optimizer iterations
    #[arg(long, default_value_t = 50)]
    pub iterations: usize,
    /// FDO weight factor (0 or 1)
    #[arg(long, default_value_t = 0.0)]
    pub weight_factor: f64,
    /// Optimizer RNG seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Train/test shuffle seed
    #[arg(long, default_value_t = 0)]
    pub split_seed: u64,
    /// Output directory (defaults to runs/train_<model>_s<seed>_p<split_seed>)
    #[arg(long, env = "SWARMNN_OUTPUT_DIR")]
    pub out: Option<PathBuf>,
    /// Also write the encoded dataset for audit
    #[arg(long)]
    pub export_encoded: bool,
}

#[derive(Args)]
pub struct EvaluateArgs {
    /// Saved model file from a training run
    #[arg(long)]
    pub model_file: PathBuf,
    /// Dataset CSV (UTF-8, comma-delimited, header row)
    #[arg(long)]
    pub dataset: PathBuf,
    /// Dataset schema file (TOML); must match the model's recorded fingerprint
    #[arg(long)]
    pub schema: PathBuf,
    /// Train/test shuffle seed used to recompute the split
    #[arg(long, default_value_t = 0)]
    pub split_seed: u64,
    /// Output directory (defaults to runs/evaluate_<model>_p<split_seed>)
    #[arg(long, env = "SWARMNN_OUTPUT_DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Optimizer: gwo, mgwo, or fdo
    pub optimizer: String,
    /// Benchmark function: sphere or rastrigin
    pub function: String,
    /// Problem dimension
    #[arg(long, default_value_t = 10)]
    pub dim: usize,
    /// Number of search agents
    #[arg(long, default_value_t = 10)]
    pub agents: usize,
    /// Number of optimizer iterations
    #[arg(long, default_value_t = 50)]
    pub iterations: usize,
    /// Optimizer RNG seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override the function's default lower bound
    #[arg(long)]
    pub lower: Option<f64>,
    /// Override the function's default upper bound
    #[arg(long)]
    pub upper: Option<f64>,
    /// Output directory (defaults to runs/bench_<optimizer>_<function>_s<seed>)
    #[arg(long, env = "SWARMNN_OUTPUT_DIR")]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Train(args) => commands::cmd_train(args),
        Command::Evaluate(args) => commands::cmd_evaluate(args),
        Command::Bench(args) => commands::cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}
