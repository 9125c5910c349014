//! Rank-frequency power-law fitting.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

/// Least-squares line through (log rank, log frequency).
#[derive(Debug, Clone, Serialize)]
pub struct ZipfFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// 1-based rank to frequency, non-increasing.
    #[serde(skip)]
    pub table: Vec<(usize, f64)>,
}

impl ZipfFit {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rank,frequency\n");
        for (rank, freq) in &self.table {
            out.push_str(&format!("{rank},{freq}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "slope": self.slope,
            "intercept": self.intercept,
            "r2": self.r_squared,
        })
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ZipfError {
    #[error("rank-frequency fit needs at least 2 distinct items, got {0}")]
    TooFewItems(usize),
    #[error("frequencies must be positive")]
    NonPositiveFrequency,
}

/// Fit from raw frequencies (one entry per distinct item, any order).
pub fn zipf_fit_counts(frequencies: &[f64]) -> Result<ZipfFit, ZipfError> {
    if frequencies.len() < 2 {
        return Err(ZipfError::TooFewItems(frequencies.len()));
    }
    if frequencies.iter().any(|f| *f <= 0.0) {
        return Err(ZipfError::NonPositiveFrequency);
    }
    let mut sorted: Vec<f64> = frequencies.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let table: Vec<(usize, f64)> = sorted
        .iter()
        .enumerate()
        .map(|(i, f)| (i + 1, *f))
        .collect();

    let xs: Vec<f64> = table.iter().map(|(r, _)| (*r as f64).ln()).collect();
    let ys: Vec<f64> = table.iter().map(|(_, f)| f.ln()).collect();
    if ys.iter().all(|y| *y == ys[0]) {
        // uniform frequencies: exactly flat
        return Ok(ZipfFit {
            slope: 0.0,
            intercept: ys[0],
            r_squared: 1.0,
            table,
        });
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };

    Ok(ZipfFit {
        slope,
        intercept,
        r_squared,
        table,
    })
}

/// Fit from a multiset of items.
pub fn zipf_fit<I, T>(items: I) -> Result<ZipfFit, ZipfError>
where
    I: IntoIterator<Item = T>,
    T: Eq + Hash,
{
    let mut counts: HashMap<T, usize> = HashMap::new();
    for item in items {
        *counts.entry(item).or_insert(0) += 1;
    }
    let frequencies: Vec<f64> = counts.values().map(|c| *c as f64).collect();
    zipf_fit_counts(&frequencies)
}
