//! Derivative-free training of small feed-forward classifiers.
//!
//! This crate trains single-hidden-layer networks (plain and cascade
//! feed-forward) on binary-labeled tabular records by metaheuristic search
//! instead of backpropagation. Three optimizers are provided: the grey-wolf
//! optimizer, a four-leader grey-wolf variant, and the fitness-dependent
//! scout-bee optimizer. The training objective is the average MSE of the
//! network output against the {1, 2} class encoding.
//!
//! The pieces compose bottom-up:
//!
//! - [`optimizer`] holds the shared contracts (search space, agents, run
//!   loop) and [`benchmarks`] the validation objectives;
//! - [`wolf`] and [`fdo`] implement the three step rules;
//! - [`network`] defines topologies, the flat parameter layout, and the
//!   forward pass; [`model_file`] persists trained models;
//! - [`data`] ingests CSV datasets and produces deterministic 80:20 splits;
//! - [`training`] wires the objective to the optimizers;
//! - [`evaluation`] computes confusion metrics, ROC curves, and reports.
//!
//! Every run is reproducible from its 64-bit seeds; see [`rng`] for the
//! stream definition.

pub mod benchmarks;
pub mod data;
pub mod evaluation;
pub mod fdo;
pub mod model_file;
pub mod network;
pub mod optimizer;
pub mod rng;
pub mod training;
pub mod wolf;

pub use data::{load_csv, split_80_20, Dataset, DatasetSchema, Matrix, Split};
pub use evaluation::{
    confusion, metrics, roc, ConfusionMatrix, EvaluationReport, MetricSet, RocCurve,
};
pub use fdo::{fdo_step, fitness_weight, FdoConfig, FdoStrategy};
pub use model_file::ModelFile;
pub use network::{classify, hidden_count, ClassLabel, NetworkKind, NetworkTopology, ParamVector};
pub use optimizer::{
    initialize_population, run, run_observed, Agent, Objective, OptimizeError, OptimizerConfig,
    OptimizerStrategy, RunResult, SearchSpace,
};
pub use rng::{RandomSource, SeededRng};
pub use training::{average_mse, sample_mse, train, ModelKind, OptimizerKind, TrainingProblem};
pub use wolf::{gwo_step, mgwo_step, GwoStrategy, MgwoStrategy, WolfLeaders};
