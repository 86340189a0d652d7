//! Single-line diagnostics grouped into four failure classes: I/O, schema,
//! config, and numeric.

use std::fmt;

use swarmnn::data::DataError;
use swarmnn::evaluation::EvalError;
use swarmnn::model_file::ModelFileError;
use swarmnn::network::NetworkError;
use swarmnn::optimizer::OptimizeError;
use swarmnn::training::TrainingError;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Schema(String),
    Config(String),
    Numeric(String),
}

impl CliError {
    fn class(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Schema(_) => "schema",
            CliError::Config(_) => "config",
            CliError::Numeric(_) => "numeric",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Schema(m) | CliError::Config(m) | CliError::Numeric(m) => m,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Keep the diagnostic to one line regardless of the source message.
        let flat = self.message().replace('\n', " ");
        write!(f, "error ({}): {}", self.class(), flat.trim())
    }
}

impl std::error::Error for CliError {}

impl From<DataError> for CliError {
    fn from(e: DataError) -> Self {
        match &e {
            DataError::Io { .. } | DataError::Csv { .. } => CliError::Io(e.to_string()),
            DataError::Schema(_) => CliError::Schema(e.to_string()),
            DataError::Config(_) => CliError::Config(e.to_string()),
        }
    }
}

impl From<OptimizeError> for CliError {
    fn from(e: OptimizeError) -> Self {
        match &e {
            OptimizeError::Config(_) => CliError::Config(e.to_string()),
            OptimizeError::NonFiniteObjective { .. } | OptimizeError::InvalidFitness(_) => {
                CliError::Numeric(e.to_string())
            }
        }
    }
}

impl From<NetworkError> for CliError {
    fn from(e: NetworkError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<TrainingError> for CliError {
    fn from(e: TrainingError) -> Self {
        match e {
            TrainingError::Optimize(inner) => inner.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<ModelFileError> for CliError {
    fn from(e: ModelFileError) -> Self {
        match &e {
            ModelFileError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
