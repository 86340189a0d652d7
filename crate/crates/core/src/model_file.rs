//! Self-describing text persistence for trained models.
//!
//! The format has three sections. `topology` and `meta` hold `key = value`
//! lines; `params` holds one decimal value per line at full round-trip
//! precision:
//!
//! ```text
//! [topology]
//! kind = MLP
//! inputs = 10
//! hidden = 21
//! outputs = 1
//!
//! [meta]
//! seed = 42
//! optimizer = GWO_MLP
//! schema_fingerprint = 9f2c1e0aa14b7d38
//!
//! [params]
//! -0.52
//! ...
//! ```

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::network::{NetworkError, NetworkKind, NetworkTopology, ParamVector};

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("cannot access model file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed model file (line {line}): {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// A trained model with enough metadata to re-run its evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub topology: NetworkTopology,
    pub seed: u64,
    /// Model kind name, e.g. `GWO_MLP`.
    pub optimizer: String,
    pub schema_fingerprint: String,
    pub params: ParamVector,
}

impl ModelFile {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("[topology]\n");
        out.push_str(&format!("kind = {}\n", self.topology.kind()));
        out.push_str(&format!("inputs = {}\n", self.topology.inputs()));
        out.push_str(&format!("hidden = {}\n", self.topology.hidden()));
        out.push_str(&format!("outputs = {}\n", self.topology.outputs()));
        out.push_str("\n[meta]\n");
        out.push_str(&format!("seed = {}\n", self.seed));
        out.push_str(&format!("optimizer = {}\n", self.optimizer));
        out.push_str(&format!(
            "schema_fingerprint = {}\n",
            self.schema_fingerprint
        ));
        out.push_str("\n[params]\n");
        for value in self.params.values() {
            out.push_str(&format!("{value}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ModelFileError> {
        let mut section = String::new();
        let mut kind: Option<NetworkKind> = None;
        let mut inputs: Option<usize> = None;
        let mut hidden: Option<usize> = None;
        let mut outputs: Option<usize> = None;
        let mut seed: Option<u64> = None;
        let mut optimizer: Option<String> = None;
        let mut fingerprint: Option<String> = None;
        let mut values: Vec<f64> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.to_string();
                continue;
            }
            match section.as_str() {
                "topology" | "meta" => {
                    let (key, value) =
                        line.split_once('=').ok_or_else(|| ModelFileError::Parse {
                            line: lineno,
                            message: format!("expected 'key = value', got '{line}'"),
                        })?;
                    let key = key.trim();
                    let value = value.trim();
                    let parse_usize = |v: &str| {
                        v.parse::<usize>().map_err(|_| ModelFileError::Parse {
                            line: lineno,
                            message: format!("'{key}' must be a non-negative integer"),
                        })
                    };
                    match key {
                        "kind" => {
                            kind = Some(value.parse().map_err(|_| ModelFileError::Parse {
                                line: lineno,
                                message: format!("unknown network kind '{value}'"),
                            })?)
                        }
                        "inputs" => inputs = Some(parse_usize(value)?),
                        "hidden" => hidden = Some(parse_usize(value)?),
                        "outputs" => outputs = Some(parse_usize(value)?),
                        "seed" => {
                            seed = Some(value.parse().map_err(|_| ModelFileError::Parse {
                                line: lineno,
                                message: "'seed' must be an unsigned 64-bit integer".into(),
                            })?)
                        }
                        "optimizer" => optimizer = Some(value.to_string()),
                        "schema_fingerprint" => fingerprint = Some(value.to_string()),
                        other => {
                            return Err(ModelFileError::Parse {
                                line: lineno,
                                message: format!("unknown key '{other}' in [{section}]"),
                            })
                        }
                    }
                }
                "params" => {
                    let value: f64 = line.parse().map_err(|_| ModelFileError::Parse {
                        line: lineno,
                        message: format!("invalid parameter value '{line}'"),
                    })?;
                    values.push(value);
                }
                _ => {
                    return Err(ModelFileError::Parse {
                        line: lineno,
                        message: "content before the first section header".into(),
                    })
                }
            }
        }

        let missing = |what: &str| ModelFileError::Parse {
            line: 0,
            message: format!("missing required field '{what}'"),
        };
        let kind = kind.ok_or_else(|| missing("kind"))?;
        let inputs = inputs.ok_or_else(|| missing("inputs"))?;
        let hidden = hidden.ok_or_else(|| missing("hidden"))?;
        let outputs = outputs.ok_or_else(|| missing("outputs"))?;
        if outputs != 1 {
            return Err(ModelFileError::Parse {
                line: 0,
                message: format!("only single-output models are supported (got {outputs})"),
            });
        }
        let topology = NetworkTopology::with_hidden(kind, inputs, hidden)?;
        let params = ParamVector::new(&topology, values)?;
        Ok(Self {
            topology,
            seed: seed.ok_or_else(|| missing("seed"))?,
            optimizer: optimizer.ok_or_else(|| missing("optimizer"))?,
            schema_fingerprint: fingerprint.ok_or_else(|| missing("schema_fingerprint"))?,
            params,
        })
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<(), ModelFileError> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|source| ModelFileError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self, ModelFileError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| ModelFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_text(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ModelFile {
        let topology = NetworkTopology::with_hidden(NetworkKind::Cmlp, 2, 3).unwrap();
        let values: Vec<f64> = (0..topology.parameter_count())
            .map(|i| (i as f64 * 0.7).sin() * 9.9)
            .collect();
        ModelFile {
            topology,
            seed: 17,
            optimizer: "FDO_CMLP".into(),
            schema_fingerprint: "deadbeef01234567".into(),
            params: ParamVector::new(&topology, values).unwrap(),
        }
    }

    #[test]
    fn text_round_trip_is_exact() {
        let model = sample();
        let parsed = ModelFile::from_text(&model.to_text()).unwrap();
        assert_eq!(parsed, model);
        for (a, b) in parsed.params.values().iter().zip(model.params.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn wrong_parameter_count_is_rejected() {
        let model = sample();
        let mut text = model.to_text();
        text.push_str("0.5\n"); // one extra value
        match ModelFile::from_text(&text) {
            Err(ModelFileError::Network(NetworkError::ParamLength { .. })) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn missing_meta_field_is_rejected() {
        let model = sample();
        let text = model.to_text().replace("seed = 17\n", "");
        assert!(ModelFile::from_text(&text).is_err());
    }

    #[test]
    fn garbage_line_reports_its_number() {
        let text = "[topology]\nkind = MLP\nnot a key value\n";
        match ModelFile::from_text(text) {
            Err(ModelFileError::Parse { line: 3, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }
}
