//! Welch's t-test for unequal variances.

use serde::{Deserialize, Serialize};

use super::special::student_t_two_tailed_p;
use super::StatsError;

/// Significance stars at the usual two-tailed thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Significance {
    /// p < 0.001
    ThreeStars,
    /// p < 0.01
    TwoStars,
    /// p < 0.05
    OneStar,
    NotSignificant,
}

impl Significance {
    pub fn from_p(p: f64) -> Significance {
        if p < 0.001 {
            Significance::ThreeStars
        } else if p < 0.01 {
            Significance::TwoStars
        } else if p < 0.05 {
            Significance::OneStar
        } else {
            Significance::NotSignificant
        }
    }

    pub fn stars(self) -> &'static str {
        match self {
            Significance::ThreeStars => "***",
            Significance::TwoStars => "**",
            Significance::OneStar => "*",
            Significance::NotSignificant => "",
        }
    }
}

/// Result of one pairwise comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairwiseComparison {
    pub t: f64,
    /// Welch-Satterthwaite degrees of freedom.
    pub dof: f64,
    /// Two-tailed p-value.
    pub p: f64,
    pub stars: Significance,
    pub mean_diff: f64,
}

/// Welch's t-test: compares means without assuming equal variances.
/// Each sample needs two or more values; two constant samples are
/// degenerate.
pub fn welch_t(sample_a: &[f64], sample_b: &[f64]) -> Result<PairwiseComparison, StatsError> {
    let na = sample_a.len();
    let nb = sample_b.len();
    if na < 2 || nb < 2 {
        return Err(StatsError::SampleTooSmall);
    }
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    let var = |s: &[f64], m: f64| {
        s.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (s.len() as f64 - 1.0)
    };
    let (ma, mb) = (mean(sample_a), mean(sample_b));
    let (va, vb) = (var(sample_a, ma), var(sample_b, mb));
    let sa = va / na as f64;
    let sb = vb / nb as f64;
    let pooled = sa + sb;
    if pooled == 0.0 {
        return Err(StatsError::DegenerateVariance);
    }

    let t = (ma - mb) / pooled.sqrt();
    let dof = pooled * pooled
        / (sa * sa / (na as f64 - 1.0) + sb * sb / (nb as f64 - 1.0));
    let p = student_t_two_tailed_p(t, dof);
    Ok(PairwiseComparison {
        t,
        dof,
        p,
        stars: Significance::from_p(p),
        mean_diff: ma - mb,
    })
}
