//! Tabular data pipeline: CSV ingestion, binary encoding, cleaning, and
//! deterministic train/test splits.
//!
//! Encoding follows the clinical-record convention used throughout the
//! crate: a positive feature response becomes 0 and a negative one 1, while
//! the target encodes positive as 1 and negative as 2.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::network::ClassLabel;
use crate::rng::{RandomSource, SeededRng};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse CSV {path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("configuration error: {0}")]
    Config(String),
}

/// Row-major matrix of encoded feature values.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<f64>>, cols: usize) -> Result<Self, DataError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(DataError::Config(format!(
                    "row {idx} has {} values, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, idx: usize) -> &[f64] {
        &self.data[idx * self.cols..(idx + 1) * self.cols]
    }

    /// New matrix holding the given rows, in order.
    pub fn gather(&self, indices: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &idx in indices {
            data.extend_from_slice(self.row(idx));
        }
        Matrix {
            rows: indices.len(),
            cols: self.cols,
            data,
        }
    }
}

/// On-disk schema description, deserialized from TOML.
#[derive(Debug, Deserialize)]
struct SchemaFile {
    feature_columns: Vec<String>,
    target_column: String,
    positive_tokens: Vec<String>,
    negative_tokens: Vec<String>,
    #[serde(default)]
    numeric_columns: Vec<String>,
}

/// Column layout and token vocabulary for one dataset.
///
/// Token matching is case-insensitive with surrounding whitespace trimmed.
/// Columns listed in `numeric_columns` are parsed as plain numbers instead
/// of being token-encoded.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSchema {
    feature_columns: Vec<String>,
    target_column: String,
    positive_tokens: Vec<String>,
    negative_tokens: Vec<String>,
    numeric_columns: HashSet<String>,
}

fn normalize(token: &str) -> String {
    token.trim().to_lowercase()
}

impl DatasetSchema {
    pub fn new(
        feature_columns: Vec<String>,
        target_column: String,
        positive_tokens: Vec<String>,
        negative_tokens: Vec<String>,
        numeric_columns: Vec<String>,
    ) -> Result<Self, DataError> {
        if feature_columns.is_empty() {
            return Err(DataError::Schema(
                "feature_columns must not be empty".into(),
            ));
        }
        let mut seen = HashSet::new();
        for column in &feature_columns {
            if !seen.insert(normalize(column)) {
                return Err(DataError::Schema(format!(
                    "duplicate feature column '{column}'"
                )));
            }
        }
        if seen.contains(&normalize(&target_column)) {
            return Err(DataError::Schema(format!(
                "target column '{target_column}' also appears in feature_columns"
            )));
        }
        let positive: Vec<String> = positive_tokens.iter().map(|t| normalize(t)).collect();
        let negative: Vec<String> = negative_tokens.iter().map(|t| normalize(t)).collect();
        if positive.is_empty() || negative.is_empty() {
            return Err(DataError::Schema(
                "positive_tokens and negative_tokens must not be empty".into(),
            ));
        }
        if positive.iter().any(|t| negative.contains(t)) {
            return Err(DataError::Schema(
                "positive_tokens and negative_tokens must be disjoint".into(),
            ));
        }
        let numeric: HashSet<String> = numeric_columns.iter().map(|c| normalize(c)).collect();
        for column in &numeric {
            if !seen.contains(column) {
                return Err(DataError::Schema(format!(
                    "numeric column '{column}' is not a feature column"
                )));
            }
        }
        Ok(Self {
            feature_columns,
            target_column,
            positive_tokens: positive,
            negative_tokens: negative,
            numeric_columns: numeric,
        })
    }

    pub fn from_toml_str(text: &str) -> Result<Self, DataError> {
        let file: SchemaFile = toml::from_str(text)
            .map_err(|e| DataError::Schema(format!("invalid schema file: {e}")))?;
        Self::new(
            file.feature_columns,
            file.target_column,
            file.positive_tokens,
            file.negative_tokens,
            file.numeric_columns,
        )
    }

    pub fn from_toml_file(path: impl AsRef<Path>) -> Result<Self, DataError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| DataError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn feature_columns(&self) -> &[String] {
        &self.feature_columns
    }

    pub fn target_column(&self) -> &str {
        &self.target_column
    }

    pub fn is_numeric(&self, column: &str) -> bool {
        self.numeric_columns.contains(&normalize(column))
    }

    fn classify_token(&self, token: &str) -> Option<ClassLabel> {
        let token = normalize(token);
        if token.is_empty() {
            return None;
        }
        if self.positive_tokens.contains(&token) {
            Some(ClassLabel::Positive)
        } else if self.negative_tokens.contains(&token) {
            Some(ClassLabel::Negative)
        } else {
            None
        }
    }

    /// Stable hex digest of the schema's semantic content, recorded in model
    /// files to detect schema drift at evaluation time.
    pub fn fingerprint(&self) -> String {
        let mut canon = String::new();
        let _ = write!(canon, "features:{};", self.feature_columns.join("\x1f"));
        let _ = write!(canon, "target:{};", self.target_column);
        let mut positive = self.positive_tokens.clone();
        positive.sort();
        let mut negative = self.negative_tokens.clone();
        negative.sort();
        let mut numeric: Vec<&String> = self.numeric_columns.iter().collect();
        numeric.sort();
        let _ = write!(canon, "pos:{};", positive.join("\x1f"));
        let _ = write!(canon, "neg:{};", negative.join("\x1f"));
        let _ = write!(
            canon,
            "numeric:{}",
            numeric
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join("\x1f")
        );
        let digest = Sha256::digest(canon.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Row bookkeeping from one [`load_csv`] call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LoadStats {
    /// Data rows read from the file (header excluded).
    pub rows_read: usize,
    /// Rows dropped for a missing, unparseable, or unknown-token cell.
    pub dropped_invalid: usize,
    /// Rows dropped because an earlier row had the same encoded content.
    pub dropped_duplicate: usize,
}

/// Encoded feature matrix plus targets. Guaranteed free of duplicate rows
/// and missing cells; binary-encoded cells are exactly 0 or 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Matrix,
    labels: Vec<ClassLabel>,
    /// Original data-row index (0-based, header excluded) of each kept row.
    row_provenance: Vec<usize>,
    stats: LoadStats,
}

impl Dataset {
    pub fn new(features: Matrix, labels: Vec<ClassLabel>) -> Result<Self, DataError> {
        if features.rows() != labels.len() {
            return Err(DataError::Config(format!(
                "{} feature rows but {} targets",
                features.rows(),
                labels.len()
            )));
        }
        let row_provenance = (0..labels.len()).collect();
        Ok(Self {
            features,
            labels,
            row_provenance,
            stats: LoadStats::default(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    /// Targets as the real-valued {1, 2} encoding.
    pub fn encoded_targets(&self) -> Vec<f64> {
        self.labels.iter().map(|l| l.encoded()).collect()
    }

    pub fn row_provenance(&self) -> &[usize] {
        &self.row_provenance
    }

    pub fn stats(&self) -> LoadStats {
        self.stats
    }

    /// Audit export of the encoded matrix and target, one CSV row per kept
    /// record.
    pub fn to_encoded_csv(&self, schema: &DatasetSchema) -> String {
        let mut out = String::new();
        out.push_str(&schema.feature_columns().join(","));
        out.push(',');
        out.push_str(schema.target_column());
        out.push('\n');
        for (idx, label) in self.labels.iter().enumerate() {
            let row = self.features.row(idx);
            for value in row {
                let _ = write!(out, "{value},");
            }
            let _ = writeln!(out, "{}", label.encoded());
        }
        out
    }
}

/// Load and encode a CSV file against a schema.
///
/// Cell handling per row: positive tokens encode to 0, negative tokens to 1
/// (numeric columns parse as-is); the target encodes positive to 1 and
/// negative to 2. Rows with a missing, unparseable, or unmatched cell are
/// dropped and counted. A row whose encoded feature+target tuple repeats an
/// earlier one is dropped as a duplicate (first occurrence kept). A header
/// missing a schema column is a fatal schema error naming the column.
pub fn load_csv(path: impl AsRef<Path>, schema: &DatasetSchema) -> Result<Dataset, DataError> {
    let path = path.as_ref();
    let path_str = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => {
                if let csv::ErrorKind::Io(source) = e.into_kind() {
                    DataError::Io {
                        path: path_str.clone(),
                        source,
                    }
                } else {
                    unreachable!()
                }
            }
            _ => DataError::Csv {
                path: path_str.clone(),
                source: e,
            },
        })?;

    let headers = reader
        .headers()
        .map_err(|source| DataError::Csv {
            path: path_str.clone(),
            source,
        })?
        .clone();
    let find_column = |name: &str| -> Result<usize, DataError> {
        headers
            .iter()
            .position(|h| normalize(h) == normalize(name))
            .ok_or_else(|| DataError::Schema(format!("column '{name}' not found in {path_str}")))
    };
    let feature_idx: Vec<usize> = schema
        .feature_columns()
        .iter()
        .map(|c| find_column(c))
        .collect::<Result<_, _>>()?;
    let target_idx = find_column(schema.target_column())?;

    let cols = feature_idx.len();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<ClassLabel> = Vec::new();
    let mut row_provenance: Vec<usize> = Vec::new();
    let mut stats = LoadStats::default();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();

    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|source| DataError::Csv {
            path: path_str.clone(),
            source,
        })?;
        stats.rows_read += 1;

        let mut encoded = Vec::with_capacity(cols);
        let mut valid = true;
        for (&idx, column) in feature_idx.iter().zip(schema.feature_columns()) {
            let cell = record.get(idx).unwrap_or("");
            let value = if schema.is_numeric(column) {
                match cell.trim().parse::<f64>() {
                    Ok(v) if v.is_finite() => Some(v),
                    _ => None,
                }
            } else {
                schema.classify_token(cell).map(|label| match label {
                    ClassLabel::Positive => 0.0,
                    ClassLabel::Negative => 1.0,
                })
            };
            match value {
                Some(v) => encoded.push(v),
                None => {
                    valid = false;
                    break;
                }
            }
        }
        let label = if valid {
            schema.classify_token(record.get(target_idx).unwrap_or(""))
        } else {
            None
        };
        let Some(label) = label else {
            stats.dropped_invalid += 1;
            continue;
        };

        let mut key: Vec<u64> = encoded.iter().map(|v| v.to_bits()).collect();
        key.push(label.encoded().to_bits());
        if !seen.insert(key) {
            stats.dropped_duplicate += 1;
            continue;
        }

        rows.push(encoded);
        labels.push(label);
        row_provenance.push(row_idx);
    }

    let features = Matrix::from_rows(rows, cols)?;
    Ok(Dataset {
        features,
        labels,
        row_provenance,
        stats,
    })
}

/// Disjoint, exhaustive index partition of one dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
}

/// Partition sizes for the 80:20 rule. The training side takes the ceiling,
/// so 3128 rows give 2503 train / 625 test.
pub fn train_test_sizes(n: usize) -> (usize, usize) {
    let train = (4 * n).div_ceil(5);
    (train, n - train)
}

/// Seeded uniform shuffle of `0..n`, then the first `ceil(0.8 * n)` indices
/// form the training partition. One unit draw per Fisher-Yates swap, walking
/// the index down from `n - 1`.
pub fn split_indices(n: usize, seed: u64) -> Result<Split, DataError> {
    if n < 5 {
        return Err(DataError::Config(format!(
            "cannot split {n} rows 80:20; at least 5 are required"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = SeededRng::new(seed);
    for i in (1..n).rev() {
        let j = (rng.unit() * (i + 1) as f64) as usize;
        order.swap(i, j);
    }
    let (train_size, _) = train_test_sizes(n);
    let test_indices = order.split_off(train_size);
    Ok(Split {
        train_indices: order,
        test_indices,
    })
}

/// 80:20 split of a dataset's row indices, deterministic per seed.
pub fn split_80_20(dataset: &Dataset, seed: u64) -> Result<Split, DataError> {
    split_indices(dataset.len(), seed)
}
