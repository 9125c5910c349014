//! Statistics for property-prediction experiments: repeated 5x5
//! cross-validation planning, class weights, MCC, AUC-ROC, and Welch's
//! t-test comparisons.

mod auc;
mod grid;
mod mcc;
mod special;
mod welch;

pub use auc::{auc_roc, auc_roc_macro_ovr};
pub use grid::{enumerate_grid, select_best, GridPoint};
pub use mcc::mcc;
pub use special::{ln_gamma, regularized_incomplete_beta, student_t_two_tailed_p};
pub use welch::{welch_t, PairwiseComparison, Significance};

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::scaffold::{murcko_scaffold, ScaffoldKey, SplitMode};
use crate::seed::{derive, stream_rng};

pub const FOLDS: usize = 5;
pub const REPEATS: usize = 5;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum StatsError {
    #[error("need at least {need} records, got {got}")]
    TooFewRecords { need: usize, got: usize },
    #[error("need at least {need} scaffold groups, got {got}")]
    TooFewGroups { need: usize, got: usize },
    #[error("confusion matrix must be square and non-empty")]
    BadConfusion,
    #[error("AUC needs both classes present")]
    SingleClass,
    #[error("input lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("each sample needs at least two values")]
    SampleTooSmall,
    #[error("degenerate variance: both samples are constant")]
    DegenerateVariance,
    #[error("SMILES record rejected: {0}")]
    BadRecord(String),
}

/// A 5-fold plan run 5 times with derived per-repeat seeds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvPlan {
    pub mode: SplitMode,
    pub seed: u64,
    pub folds: Vec<Vec<usize>>,
    pub repeats: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvRun {
    pub fold: usize,
    pub repeat: usize,
    pub seed: u64,
}

impl CvPlan {
    /// The 25 (fold, repeat) runs with their derived seeds.
    pub fn runs(&self) -> Vec<CvRun> {
        let mut runs = Vec::with_capacity(self.folds.len() * self.repeats);
        for repeat in 0..self.repeats {
            for fold in 0..self.folds.len() {
                runs.push(CvRun {
                    fold,
                    repeat,
                    seed: derive(self.seed, (repeat * self.folds.len() + fold) as u64),
                });
            }
        }
        runs
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }
}

/// Plan 5 folds over `n` records by seeded round-robin dealing; fold
/// sizes differ by at most one.
pub fn plan_cv_random(n: usize, seed: u64) -> Result<CvPlan, StatsError> {
    if n < FOLDS {
        return Err(StatsError::TooFewRecords { need: FOLDS, got: n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut stream_rng(seed, 0xcf1d));
    let mut folds = vec![Vec::new(); FOLDS];
    for (pos, idx) in order.into_iter().enumerate() {
        folds[pos % FOLDS].push(idx);
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(CvPlan {
        mode: SplitMode::Random,
        seed,
        folds,
        repeats: REPEATS,
    })
}

/// Plan 5 folds with every scaffold group inside one fold: groups are
/// placed largest-first into the currently smallest fold.
pub fn plan_cv_scaffold<S: AsRef<str>>(records: &[S], seed: u64) -> Result<CvPlan, StatsError> {
    let mut groups: BTreeMap<ScaffoldKey, Vec<usize>> = BTreeMap::new();
    for (idx, record) in records.iter().enumerate() {
        let graph = crate::graph::parse_smiles(record.as_ref())
            .map_err(|e| StatsError::BadRecord(format!("{}: {e}", record.as_ref())))?;
        let key = murcko_scaffold(&graph)
            .map_err(|e| StatsError::BadRecord(format!("{}: {e}", record.as_ref())))?;
        groups.entry(key).or_default().push(idx);
    }
    if groups.len() < FOLDS {
        return Err(StatsError::TooFewGroups {
            need: FOLDS,
            got: groups.len(),
        });
    }
    let mut ordered: Vec<(ScaffoldKey, Vec<usize>)> = groups.into_iter().collect();
    ordered.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.0.cmp(&b.0)));

    let mut folds = vec![Vec::new(); FOLDS];
    for (_, members) in ordered {
        let smallest = (0..FOLDS).min_by_key(|&f| folds[f].len()).unwrap();
        folds[smallest].extend(members);
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(CvPlan {
        mode: SplitMode::Scaffold,
        seed,
        folds,
        repeats: REPEATS,
    })
}

/// Balanced class weights: `n_total / (n_classes * count(class))`.
/// Classes absent from the labels are absent from the map.
pub fn class_weights(labels: &[usize]) -> BTreeMap<usize, f64> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &label in labels {
        *counts.entry(label).or_insert(0) += 1;
    }
    let n_total = labels.len() as f64;
    let n_classes = counts.len() as f64;
    counts
        .into_iter()
        .map(|(class, count)| (class, n_total / (n_classes * count as f64)))
        .collect()
}

/// Mean, sample standard deviation, and standard error of a metric over
/// runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub mean: f64,
    pub std: f64,
    pub se: f64,
    pub n: usize,
}

/// Summarize metric values: sample std (n-1 denominator; 0 for a single
/// value by convention) and `se = std / sqrt(n)`.
pub fn summarize(values: &[f64]) -> MetricSummary {
    let n = values.len();
    if n == 0 {
        return MetricSummary {
            mean: f64::NAN,
            std: f64::NAN,
            se: f64::NAN,
            n: 0,
        };
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n == 1 {
        0.0
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        (ss / (n as f64 - 1.0)).sqrt()
    };
    MetricSummary {
        mean,
        std,
        se: std / (n as f64).sqrt(),
        n,
    }
}
