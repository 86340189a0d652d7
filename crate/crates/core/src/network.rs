//! Feed-forward and cascade feed-forward topologies over a flat parameter
//! vector, plus the forward pass and the class decision rule.
//!
//! Hidden units use the logistic sigmoid; the single output unit is linear,
//! regressing against the class encoding {1, 2}. The cascade variant adds
//! direct input-to-output connections and one auxiliary output bias so its
//! parameter count is `inputs + 1` above the plain network's.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("invalid topology: {0}")]
    Topology(String),
    #[error("parameter vector length {actual} does not match topology (expected {expected})")]
    ParamLength { expected: usize, actual: usize },
    #[error("parameter vector contains a non-finite value at index {0}")]
    NonFiniteParam(usize),
}

/// Network wiring: plain feed-forward or cascade feed-forward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkKind {
    Mlp,
    Cmlp,
}

impl fmt::Display for NetworkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetworkKind::Mlp => write!(f, "MLP"),
            NetworkKind::Cmlp => write!(f, "CMLP"),
        }
    }
}

impl FromStr for NetworkKind {
    type Err = NetworkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "MLP" => Ok(NetworkKind::Mlp),
            "CMLP" => Ok(NetworkKind::Cmlp),
            other => Err(NetworkError::Topology(format!(
                "unknown network kind '{other}' (expected MLP or CMLP)"
            ))),
        }
    }
}

/// Hidden-layer width rule: `2 * inputs + 1`.
pub fn hidden_count(inputs: usize) -> usize {
    2 * inputs + 1
}

/// Single-hidden-layer topology with one linear output unit. Owns the flat
/// parameter-vector layout that the optimizers search over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkTopology {
    kind: NetworkKind,
    inputs: usize,
    hidden: usize,
    outputs: usize,
}

impl NetworkTopology {
    /// Build a topology with the hidden width set by [`hidden_count`].
    pub fn new(kind: NetworkKind, inputs: usize) -> Result<Self, NetworkError> {
        Self::with_hidden(kind, inputs, hidden_count(inputs))
    }

    /// Build a topology with an explicit hidden width, overriding the rule.
    pub fn with_hidden(
        kind: NetworkKind,
        inputs: usize,
        hidden: usize,
    ) -> Result<Self, NetworkError> {
        if inputs == 0 {
            return Err(NetworkError::Topology("inputs must be at least 1".into()));
        }
        if hidden == 0 {
            return Err(NetworkError::Topology("hidden must be at least 1".into()));
        }
        Ok(Self {
            kind,
            inputs,
            hidden,
            outputs: 1,
        })
    }

    pub fn kind(&self) -> NetworkKind {
        self.kind
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    /// Length of the flat parameter vector (the optimizer's problem
    /// dimension).
    pub fn parameter_count(&self) -> usize {
        let core =
            self.inputs * self.hidden + self.hidden + self.hidden * self.outputs + self.outputs;
        match self.kind {
            NetworkKind::Mlp => core,
            NetworkKind::Cmlp => core + self.inputs + 1,
        }
    }

    /// Raw real-valued output for one feature row.
    ///
    /// Layout of `params`: input-to-hidden weights (row-major by hidden
    /// neuron), hidden biases, hidden-to-output weights, output bias, then
    /// for the cascade kind the direct input-to-output weights and the
    /// auxiliary output bias.
    ///
    /// # Panics
    ///
    /// Length mismatches are programmer error and panic.
    pub fn forward(&self, params: &[f64], features: &[f64]) -> f64 {
        assert_eq!(
            params.len(),
            self.parameter_count(),
            "parameter vector length mismatch"
        );
        assert_eq!(features.len(), self.inputs, "feature row length mismatch");

        let (input_hidden, rest) = params.split_at(self.inputs * self.hidden);
        let (hidden_bias, rest) = rest.split_at(self.hidden);
        let (hidden_output, rest) = rest.split_at(self.hidden);
        let (output_bias, cascade) = rest.split_at(1);

        let mut output = output_bias[0];
        for j in 0..self.hidden {
            let weights = &input_hidden[j * self.inputs..(j + 1) * self.inputs];
            let z = weights
                .iter()
                .zip(features)
                .map(|(w, x)| w * x)
                .sum::<f64>()
                + hidden_bias[j];
            output += hidden_output[j] * sigmoid(z);
        }
        if self.kind == NetworkKind::Cmlp {
            let (direct, aux_bias) = cascade.split_at(self.inputs);
            output += direct.iter().zip(features).map(|(u, x)| u * x).sum::<f64>() + aux_bias[0];
        }
        output
    }
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Binary class labels and their numeric encoding: positive is 1, negative
/// is 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    Positive,
    Negative,
}

impl ClassLabel {
    pub fn encoded(self) -> f64 {
        match self {
            ClassLabel::Positive => 1.0,
            ClassLabel::Negative => 2.0,
        }
    }

    pub fn from_encoded(value: f64) -> Option<Self> {
        if value == 1.0 {
            Some(ClassLabel::Positive)
        } else if value == 2.0 {
            Some(ClassLabel::Negative)
        } else {
            None
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Positive => write!(f, "positive"),
            ClassLabel::Negative => write!(f, "negative"),
        }
    }
}

/// Nearest-target decision over the {1, 2} encoding: outputs below 1.5 are
/// positive, everything else (ties included) negative.
pub fn classify(output: f64) -> ClassLabel {
    if output < 1.5 {
        ClassLabel::Positive
    } else {
        ClassLabel::Negative
    }
}

/// Flat parameter vector validated against a topology: exact length, all
/// values finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector {
    values: Vec<f64>,
}

impl ParamVector {
    pub fn new(topology: &NetworkTopology, values: Vec<f64>) -> Result<Self, NetworkError> {
        if values.len() != topology.parameter_count() {
            return Err(NetworkError::ParamLength {
                expected: topology.parameter_count(),
                actual: values.len(),
            });
        }
        if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
            return Err(NetworkError::NonFiniteParam(idx));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
