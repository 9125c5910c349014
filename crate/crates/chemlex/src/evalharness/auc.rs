//! AUC-ROC via the Mann-Whitney statistic.

use super::StatsError;

/// Probability that a random positive scores above a random negative,
/// counting ties as half. Requires both classes present.
pub fn auc_roc(scores: &[f64], labels: &[bool]) -> Result<f64, StatsError> {
    if scores.len() != labels.len() {
        return Err(StatsError::LengthMismatch(scores.len(), labels.len()));
    }
    let positives = labels.iter().filter(|l| **l).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(StatsError::SingleClass);
    }

    // average ranks, ties shared
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap());
    let mut ranks = vec![0.0f64; scores.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let shared = (i + j + 2) as f64 / 2.0; // ranks are 1-based
        for &idx in &order[i..=j] {
            ranks[idx] = shared;
        }
        i = j + 1;
    }

    let rank_sum_pos: f64 = ranks
        .iter()
        .zip(labels)
        .filter(|(_, l)| **l)
        .map(|(r, _)| r)
        .sum();
    let u = rank_sum_pos - (positives * (positives + 1)) as f64 / 2.0;
    Ok(u / (positives as f64 * negatives as f64))
}

/// Macro-averaged one-vs-rest AUC for a multiclass problem.
/// `scores[c]` holds per-record scores for class `c`.
pub fn auc_roc_macro_ovr(scores: &[Vec<f64>], labels: &[usize]) -> Result<f64, StatsError> {
    if scores.is_empty() {
        return Err(StatsError::SingleClass);
    }
    let mut total = 0.0;
    let mut classes = 0usize;
    for (class, class_scores) in scores.iter().enumerate() {
        if class_scores.len() != labels.len() {
            return Err(StatsError::LengthMismatch(class_scores.len(), labels.len()));
        }
        let binary: Vec<bool> = labels.iter().map(|&l| l == class).collect();
        if binary.iter().all(|b| !b) {
            continue; // class absent from this evaluation set
        }
        total += auc_roc(class_scores, &binary)?;
        classes += 1;
    }
    if classes == 0 {
        return Err(StatsError::SingleClass);
    }
    Ok(total / classes as f64)
}
