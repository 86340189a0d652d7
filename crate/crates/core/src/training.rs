//! Bridges optimizers and networks: the average-MSE objective over a
//! training set and the five model configurations.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::data::Matrix;
use crate::fdo::{FdoConfig, FdoStrategy};
use crate::network::{NetworkError, NetworkKind, NetworkTopology, ParamVector};
use crate::optimizer::{
    run, OptimizeError, OptimizerConfig, OptimizerStrategy, RunResult, SearchSpace,
};
use crate::wolf::{GwoStrategy, MgwoStrategy};

/// Half-width of the weight search box. Ten comfortably saturates a logistic
/// unit while keeping the box searchable at dimensions in the hundreds.
pub const WEIGHT_BOUND: f64 = 10.0;

#[derive(Debug, Error)]
pub enum TrainingError {
    #[error("invalid training problem: {0}")]
    Problem(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Optimize(#[from] OptimizeError),
}

/// Training algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizerKind {
    Gwo,
    Mgwo,
    Fdo,
}

impl OptimizerKind {
    pub fn name(&self) -> &'static str {
        match self {
            OptimizerKind::Gwo => "GWO",
            OptimizerKind::Mgwo => "MGWO",
            OptimizerKind::Fdo => "FDO",
        }
    }
}

impl fmt::Display for OptimizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OptimizerKind {
    type Err = TrainingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "GWO" => Ok(OptimizerKind::Gwo),
            "MGWO" => Ok(OptimizerKind::Mgwo),
            "FDO" => Ok(OptimizerKind::Fdo),
            other => Err(TrainingError::Problem(format!(
                "unknown optimizer '{other}' (expected GWO, MGWO, or FDO)"
            ))),
        }
    }
}

/// Fresh strategy instance for one run.
pub fn make_strategy(kind: OptimizerKind, fdo_config: FdoConfig) -> Box<dyn OptimizerStrategy> {
    match kind {
        OptimizerKind::Gwo => Box::new(GwoStrategy),
        OptimizerKind::Mgwo => Box::new(MgwoStrategy),
        OptimizerKind::Fdo => Box::new(FdoStrategy::new(fdo_config)),
    }
}

/// The five reference model configurations: an optimizer paired with a
/// network kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    GwoMlp,
    GwoCmlp,
    MgwoMlp,
    FdoMlp,
    FdoCmlp,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::GwoMlp,
        ModelKind::GwoCmlp,
        ModelKind::MgwoMlp,
        ModelKind::FdoMlp,
        ModelKind::FdoCmlp,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::GwoMlp => "GWO_MLP",
            ModelKind::GwoCmlp => "GWO_CMLP",
            ModelKind::MgwoMlp => "MGWO_MLP",
            ModelKind::FdoMlp => "FDO_MLP",
            ModelKind::FdoCmlp => "FDO_CMLP",
        }
    }

    pub fn optimizer(&self) -> OptimizerKind {
        match self {
            ModelKind::GwoMlp | ModelKind::GwoCmlp => OptimizerKind::Gwo,
            ModelKind::MgwoMlp => OptimizerKind::Mgwo,
            ModelKind::FdoMlp | ModelKind::FdoCmlp => OptimizerKind::Fdo,
        }
    }

    pub fn network_kind(&self) -> NetworkKind {
        match self {
            ModelKind::GwoMlp | ModelKind::MgwoMlp | ModelKind::FdoMlp => NetworkKind::Mlp,
            ModelKind::GwoCmlp | ModelKind::FdoCmlp => NetworkKind::Cmlp,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = TrainingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase();
        ModelKind::ALL
            .iter()
            .find(|kind| kind.name() == wanted)
            .copied()
            .ok_or_else(|| {
                TrainingError::Problem(format!(
                    "unknown model '{s}' (expected one of GWO_MLP, GWO_CMLP, MGWO_MLP, FDO_MLP, FDO_CMLP)"
                ))
            })
    }
}

/// A topology bound to its training set; owns the search space the optimizer
/// runs in (dimension = parameter count, bounds `[-WEIGHT_BOUND, WEIGHT_BOUND]`).
#[derive(Debug, Clone)]
pub struct TrainingProblem {
    topology: NetworkTopology,
    features: Matrix,
    targets: Vec<f64>,
    space: SearchSpace,
}

impl TrainingProblem {
    pub fn new(
        topology: NetworkTopology,
        features: Matrix,
        targets: Vec<f64>,
    ) -> Result<Self, TrainingError> {
        if features.rows() == 0 {
            return Err(TrainingError::Problem("training set is empty".into()));
        }
        if features.cols() != topology.inputs() {
            return Err(TrainingError::Problem(format!(
                "feature matrix has {} columns but the topology expects {} inputs",
                features.cols(),
                topology.inputs()
            )));
        }
        if features.rows() != targets.len() {
            return Err(TrainingError::Problem(format!(
                "{} feature rows but {} targets",
                features.rows(),
                targets.len()
            )));
        }
        if let Some(bad) = targets.iter().find(|t| **t != 1.0 && **t != 2.0) {
            return Err(TrainingError::Problem(format!(
                "targets must be encoded as 1 or 2 (got {bad})"
            )));
        }
        let space = SearchSpace::new(topology.parameter_count(), -WEIGHT_BOUND, WEIGHT_BOUND)?;
        Ok(Self {
            topology,
            features,
            targets,
            space,
        })
    }

    pub fn topology(&self) -> &NetworkTopology {
        &self.topology
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    pub fn sample_count(&self) -> usize {
        self.targets.len()
    }
}

/// Squared error of the network on one sample.
pub fn sample_mse(
    topology: &NetworkTopology,
    params: &[f64],
    features_row: &[f64],
    target: f64,
) -> f64 {
    let output = topology.forward(params, features_row);
    let residual = target - output;
    residual * residual
}

/// Mean squared error over the whole training set; this is the objective
/// the optimizers minimize. Fixed-order summation keeps results bit-stable.
pub fn average_mse(problem: &TrainingProblem, params: &[f64]) -> f64 {
    let mut acc = 0.0;
    for row in 0..problem.sample_count() {
        acc += sample_mse(
            &problem.topology,
            params,
            problem.features.row(row),
            problem.targets[row],
        );
    }
    acc / problem.sample_count() as f64
}

/// Train one model configuration: run the named optimizer against the
/// average-MSE objective and return the best parameter vector with its run
/// trace.
pub fn train(
    kind: ModelKind,
    problem: &TrainingProblem,
    config: &OptimizerConfig,
    fdo_config: FdoConfig,
) -> Result<(ParamVector, RunResult), TrainingError> {
    let mut strategy = make_strategy(kind.optimizer(), fdo_config);
    let objective = |params: &[f64]| average_mse(problem, params);
    let result = run(strategy.as_mut(), problem.space(), config, &objective)?;
    let params = ParamVector::new(&problem.topology, result.best_position.clone())?;
    Ok((params, result))
}
