//! Corpus-level error profiles: per-category counts and shares over the
//! rejected strings.

use serde::Serialize;

use super::{validate, ErrorCategory, ErrorKind, Mode, ValidationOutcome};

#[derive(Debug, Clone, Serialize)]
pub struct CategoryStat {
    pub kind: ErrorKind,
    pub message: &'static str,
    pub count: usize,
    /// Share of rejected strings, in percent.
    pub pct: f64,
    pub long_range: bool,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct KindShares {
    pub syntax: f64,
    pub valence: f64,
    pub kekulization: f64,
}

/// Aggregated validation results for a corpus.
#[derive(Debug, Clone, Default)]
pub struct ErrorProfile {
    pub total: usize,
    pub valid: usize,
    pub rejected: usize,
    counts: [usize; 21],
}

impl ErrorProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, outcome: &ValidationOutcome) {
        self.total += 1;
        match &outcome.error {
            None => self.valid += 1,
            Some(err) => {
                self.rejected += 1;
                let idx = ErrorCategory::ALL
                    .iter()
                    .position(|c| *c == err.category)
                    .expect("category registry is closed");
                self.counts[idx] += 1;
            }
        }
    }

    pub fn merge(&mut self, other: &ErrorProfile) {
        self.total += other.total;
        self.valid += other.valid;
        self.rejected += other.rejected;
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
    }

    pub fn count(&self, category: ErrorCategory) -> usize {
        let idx = ErrorCategory::ALL
            .iter()
            .position(|c| *c == category)
            .unwrap();
        self.counts[idx]
    }

    fn pct(&self, count: usize) -> f64 {
        if self.rejected == 0 {
            0.0
        } else {
            count as f64 / self.rejected as f64 * 100.0
        }
    }

    /// Per-category stats in registry order. Empty when nothing was
    /// rejected.
    pub fn category_stats(&self) -> Vec<CategoryStat> {
        if self.rejected == 0 {
            return Vec::new();
        }
        ErrorCategory::ALL
            .iter()
            .enumerate()
            .map(|(idx, c)| CategoryStat {
                kind: c.kind(),
                message: c.message_template(),
                count: self.counts[idx],
                pct: self.pct(self.counts[idx]),
                long_range: c.long_range(),
            })
            .collect()
    }

    /// Combined share of the six long-range syntax categories, percent.
    pub fn long_range_pct(&self) -> f64 {
        let count: usize = ErrorCategory::ALL
            .iter()
            .enumerate()
            .filter(|(_, c)| c.long_range())
            .map(|(idx, _)| self.counts[idx])
            .sum();
        self.pct(count)
    }

    /// Shares by error kind, percent of rejected strings.
    pub fn kind_pct(&self) -> KindShares {
        let mut shares = KindShares::default();
        for (idx, c) in ErrorCategory::ALL.iter().enumerate() {
            let pct = self.pct(self.counts[idx]);
            match c.kind() {
                ErrorKind::Syntax => shares.syntax += pct,
                ErrorKind::Valence => shares.valence += pct,
                ErrorKind::Kekulization => shares.kekulization += pct,
            }
        }
        shares
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "total": self.total,
            "valid": self.valid,
            "rejected": self.rejected,
            "categories": self.category_stats(),
            "long_range_pct": self.long_range_pct(),
            "kind_pct": self.kind_pct(),
        })
    }

    /// CSV rendering: one row per category with its kind, wording, count,
    /// share, and long-range flag.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,message,count,pct,long_range\n");
        for stat in self.category_stats() {
            out.push_str(&format!(
                "{},{},{},{:.4},{}\n",
                stat.kind.as_str(),
                stat.message,
                stat.count,
                stat.pct,
                stat.long_range
            ));
        }
        out
    }
}

/// Validate every line in full mode and aggregate the rejections.
pub fn error_profile<'a, I>(corpus: I) -> ErrorProfile
where
    I: IntoIterator<Item = &'a str>,
{
    let mut profile = ErrorProfile::new();
    for line in corpus {
        profile.record(&validate(line, Mode::Full));
    }
    profile
}
