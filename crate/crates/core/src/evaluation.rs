//! Confusion-matrix metrics, ROC curves, and report assembly.
//!
//! The positive class is the encoded label 1. Because lower raw outputs mean
//! "more positive" under that encoding, ROC thresholds predict positive when
//! the output falls below the cutoff.

use std::fmt::Write as _;

use thiserror::Error;

use crate::network::ClassLabel;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("label vectors have different lengths ({truth} vs {predicted})")]
    LengthMismatch { truth: usize, predicted: usize },
    #[error("cannot evaluate an empty sample")]
    Empty,
    #[error("ROC requires at least one {missing} sample")]
    DegenerateClass { missing: &'static str },
    #[error("raw output at index {0} is not finite")]
    NonFiniteScore(usize),
}

/// Binary confusion counts; positive class = encoded label 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    pub true_positives: usize,
    pub false_negatives: usize,
    pub true_negatives: usize,
    pub false_positives: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.true_positives + self.false_negatives + self.true_negatives + self.false_positives
    }

    /// Number of truly positive samples.
    pub fn positives(&self) -> usize {
        self.true_positives + self.false_negatives
    }

    /// Number of truly negative samples.
    pub fn negatives(&self) -> usize {
        self.true_negatives + self.false_positives
    }
}

/// Count prediction outcomes against the truth.
pub fn confusion(
    truth: &[ClassLabel],
    predicted: &[ClassLabel],
) -> Result<ConfusionMatrix, EvalError> {
    if truth.len() != predicted.len() {
        return Err(EvalError::LengthMismatch {
            truth: truth.len(),
            predicted: predicted.len(),
        });
    }
    if truth.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut cm = ConfusionMatrix::default();
    for (&t, &p) in truth.iter().zip(predicted) {
        match (t, p) {
            (ClassLabel::Positive, ClassLabel::Positive) => cm.true_positives += 1,
            (ClassLabel::Positive, ClassLabel::Negative) => cm.false_negatives += 1,
            (ClassLabel::Negative, ClassLabel::Negative) => cm.true_negatives += 1,
            (ClassLabel::Negative, ClassLabel::Positive) => cm.false_positives += 1,
        }
    }
    Ok(cm)
}

/// Derived classification metrics, stored at full precision.
///
/// A ratio whose denominator is empty is reported as 1.0 (vacuously perfect
/// over an empty class) and the metric's name is recorded in `degenerate` so
/// reports can carry the warning.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSet {
    pub sensitivity: f64,
    pub specificity: f64,
    pub ppv: f64,
    pub npv: f64,
    pub accuracy: f64,
    pub mse: f64,
    pub correct_rate_percent: f64,
    pub degenerate: Vec<&'static str>,
}

impl MetricSet {
    pub fn with_mse(mut self, mse: f64) -> Self {
        self.mse = mse;
        self
    }
}

/// Compute the ratio metrics from confusion counts. `mse` is left at zero;
/// attach it with [`MetricSet::with_mse`] when assembling a report.
pub fn metrics(cm: &ConfusionMatrix) -> MetricSet {
    let mut degenerate = Vec::new();
    let mut ratio = |num: usize, den: usize, name: &'static str| -> f64 {
        if den == 0 {
            degenerate.push(name);
            1.0
        } else {
            num as f64 / den as f64
        }
    };
    let sensitivity = ratio(cm.true_positives, cm.positives(), "sensitivity");
    let specificity = ratio(cm.true_negatives, cm.negatives(), "specificity");
    let ppv = ratio(
        cm.true_positives,
        cm.true_positives + cm.false_positives,
        "ppv",
    );
    let npv = ratio(
        cm.true_negatives,
        cm.true_negatives + cm.false_negatives,
        "npv",
    );
    let accuracy = ratio(
        cm.true_positives + cm.true_negatives,
        cm.total(),
        "accuracy",
    );
    MetricSet {
        sensitivity,
        specificity,
        ppv,
        npv,
        accuracy,
        mse: 0.0,
        correct_rate_percent: 100.0 * accuracy,
        degenerate,
    }
}

/// One operating point of the threshold sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub threshold: f64,
    pub false_positive_rate: f64,
    pub true_positive_rate: f64,
}

/// ROC curve over the raw network outputs, with its trapezoidal area.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    /// Points ordered by threshold; starts at (0,0), ends at (1,1).
    pub points: Vec<RocPoint>,
    pub auc: f64,
}

/// Sweep thresholds over the sorted unique raw outputs (plus an infinite
/// cutoff for the (1,1) endpoint), predicting positive when the output lies
/// strictly below the threshold.
pub fn roc(truth: &[ClassLabel], raw_outputs: &[f64]) -> Result<RocCurve, EvalError> {
    if truth.len() != raw_outputs.len() {
        return Err(EvalError::LengthMismatch {
            truth: truth.len(),
            predicted: raw_outputs.len(),
        });
    }
    if truth.is_empty() {
        return Err(EvalError::Empty);
    }
    if let Some(idx) = raw_outputs.iter().position(|v| !v.is_finite()) {
        return Err(EvalError::NonFiniteScore(idx));
    }
    let positives = truth.iter().filter(|&&l| l == ClassLabel::Positive).count();
    let negatives = truth.len() - positives;
    if positives == 0 {
        return Err(EvalError::DegenerateClass {
            missing: "positive",
        });
    }
    if negatives == 0 {
        return Err(EvalError::DegenerateClass {
            missing: "negative",
        });
    }

    let mut scored: Vec<(f64, ClassLabel)> = raw_outputs
        .iter()
        .copied()
        .zip(truth.iter().copied())
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut points = Vec::new();
    let mut pos_below = 0usize;
    let mut neg_below = 0usize;
    let mut cursor = 0usize;
    let mut emit = |threshold: f64, pos_below: usize, neg_below: usize| {
        points.push(RocPoint {
            threshold,
            false_positive_rate: neg_below as f64 / negatives as f64,
            true_positive_rate: pos_below as f64 / positives as f64,
        });
    };
    while cursor < scored.len() {
        let threshold = scored[cursor].0;
        emit(threshold, pos_below, neg_below);
        while cursor < scored.len() && scored[cursor].0 == threshold {
            match scored[cursor].1 {
                ClassLabel::Positive => pos_below += 1,
                ClassLabel::Negative => neg_below += 1,
            }
            cursor += 1;
        }
    }
    emit(f64::INFINITY, pos_below, neg_below);

    let auc = points
        .windows(2)
        .map(|pair| {
            let dx = pair[1].false_positive_rate - pair[0].false_positive_rate;
            let y = pair[1].true_positive_rate + pair[0].true_positive_rate;
            dx * y / 2.0
        })
        .sum();

    Ok(RocCurve { points, auc })
}

/// ROC export with header `threshold,fpr,tpr`.
pub fn roc_to_csv(curve: &RocCurve) -> String {
    let mut out = String::from("threshold,fpr,tpr\n");
    for point in &curve.points {
        let _ = writeln!(
            out,
            "{},{},{}",
            point.threshold, point.false_positive_rate, point.true_positive_rate
        );
    }
    out
}

/// Everything measured on one evaluated partition.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub confusion: ConfusionMatrix,
    pub metrics: MetricSet,
    pub mse: f64,
    pub roc: RocCurve,
    /// Wall-clock seconds spent producing the predictions; excluded from all
    /// rendered artifacts so reports stay byte-reproducible.
    pub elapsed_seconds: f64,
}

/// Assemble the report for one partition from its predictions.
pub fn evaluate_predictions(
    truth: &[ClassLabel],
    predicted: &[ClassLabel],
    raw_outputs: &[f64],
    mse: f64,
) -> Result<EvaluationReport, EvalError> {
    let cm = confusion(truth, predicted)?;
    let metric_set = metrics(&cm).with_mse(mse);
    let curve = roc(truth, raw_outputs)?;
    Ok(EvaluationReport {
        confusion: cm,
        metrics: metric_set,
        mse,
        roc: curve,
        elapsed_seconds: 0.0,
    })
}

/// Human-readable report: a class-performance block (rates at four
/// decimals) and a confusion-metrics block (two decimals).
pub fn render_report_text(
    model: &str,
    dataset: &str,
    sections: &[(&str, &EvaluationReport)],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model: {model}");
    let _ = writeln!(out, "dataset: {dataset}");
    let _ = writeln!(out);
    let _ = writeln!(out, "class performance");
    let _ = writeln!(
        out,
        "{:<10} {:>9} {:>12} {:>10} {:>9} {:>12} {:>10} {:>11} {:>9}",
        "split",
        "positives",
        "correct_pos",
        "rate_pos%",
        "negatives",
        "correct_neg",
        "rate_neg%",
        "mse",
        "rate%"
    );
    for (name, report) in sections {
        let cm = &report.confusion;
        let m = &report.metrics;
        let _ = writeln!(
            out,
            "{:<10} {:>9} {:>12} {:>10.4} {:>9} {:>12} {:>10.4} {:>11.7} {:>9.4}",
            name,
            cm.positives(),
            cm.true_positives,
            100.0 * m.sensitivity,
            cm.negatives(),
            cm.true_negatives,
            100.0 * m.specificity,
            m.mse,
            m.correct_rate_percent
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "confusion metrics");
    let _ = writeln!(
        out,
        "{:<10} {:>11} {:>11} {:>6} {:>6} {:>9} {:>9}",
        "split", "sensitivity", "specificity", "ppv", "npv", "accuracy", "auc"
    );
    for (name, report) in sections {
        let m = &report.metrics;
        let _ = writeln!(
            out,
            "{:<10} {:>11.2} {:>11.2} {:>6.2} {:>6.2} {:>8.2}% {:>9.6}",
            name,
            m.sensitivity,
            m.specificity,
            m.ppv,
            m.npv,
            m.correct_rate_percent,
            report.roc.auc
        );
    }
    for (name, report) in sections {
        if !report.metrics.degenerate.is_empty() {
            let _ = writeln!(
                out,
                "warning: {name} split has an empty class; {} reported as 1",
                report.metrics.degenerate.join(", ")
            );
        }
    }
    out
}

/// Machine-readable companion of [`render_report_text`], full precision.
pub fn render_report_csv(sections: &[(&str, &EvaluationReport)]) -> String {
    let mut out = String::from(
        "split,positive_cases,positive_correct,negative_cases,negative_correct,\
         sensitivity,specificity,ppv,npv,accuracy,correct_rate_percent,mse,auc\n",
    );
    for (name, report) in sections {
        let cm = &report.confusion;
        let m = &report.metrics;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            name,
            cm.positives(),
            cm.true_positives,
            cm.negatives(),
            cm.true_negatives,
            m.sensitivity,
            m.specificity,
            m.ppv,
            m.npv,
            m.accuracy,
            m.correct_rate_percent,
            m.mse,
            report.roc.auc
        );
    }
    out
}
