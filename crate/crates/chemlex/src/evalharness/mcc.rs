//! Matthews correlation coefficient.

use super::StatsError;

/// MCC from a K x K confusion matrix (`confusion[actual][predicted]`).
///
/// The binary case uses the four-term formula; larger matrices use the
/// generalized multiclass form (the two agree for K = 2). Any zero
/// denominator term yields 0 by convention.
pub fn mcc(confusion: &[Vec<u64>]) -> Result<f64, StatsError> {
    let k = confusion.len();
    if k == 0 || confusion.iter().any(|row| row.len() != k) {
        return Err(StatsError::BadConfusion);
    }
    let total: u64 = confusion.iter().flatten().sum();
    if total == 0 {
        return Err(StatsError::BadConfusion);
    }
    if k == 2 {
        let tn = confusion[0][0] as f64;
        let fp = confusion[0][1] as f64;
        let fn_ = confusion[1][0] as f64;
        let tp = confusion[1][1] as f64;
        let denom = (tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_);
        if denom == 0.0 {
            return Ok(0.0);
        }
        return Ok((tp * tn - fp * fn_) / denom.sqrt());
    }
    Ok(generalized_mcc(confusion))
}

/// Generalized (multiclass) MCC.
pub(crate) fn generalized_mcc(confusion: &[Vec<u64>]) -> f64 {
    let k = confusion.len();
    let s: f64 = confusion.iter().flatten().map(|&c| c as f64).sum();
    let correct: f64 = (0..k).map(|i| confusion[i][i] as f64).sum();
    let actual: Vec<f64> = (0..k)
        .map(|i| confusion[i].iter().map(|&c| c as f64).sum())
        .collect();
    let predicted: Vec<f64> = (0..k)
        .map(|j| confusion.iter().map(|row| row[j] as f64).sum())
        .collect();
    let cross: f64 = (0..k).map(|i| actual[i] * predicted[i]).sum();
    let sum_a2: f64 = actual.iter().map(|a| a * a).sum();
    let sum_p2: f64 = predicted.iter().map(|p| p * p).sum();

    let denom = ((s * s - sum_p2) * (s * s - sum_a2)).sqrt();
    if denom == 0.0 {
        return 0.0;
    }
    (correct * s - cross) / denom
}
