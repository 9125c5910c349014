//! Evaluation of generated SMILES corpora: validity, uniqueness, novelty,
//! scaffold counts, and error composition against a reference corpus.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::graph::{canonical_key, kekulize_check, parse_smiles, CanonicalKey};
use crate::scaffold::{murcko_scaffold, ScaffoldKey};
use crate::validator::{validate, ErrorProfile, Mode};

/// Corpus-level generation quality report.
///
/// All molecule-level fractions share the total generated count as their
/// denominator, so `novel_frac <= unique_frac <= valid_frac` always holds
/// (novel molecules are a subset of unique ones, which are a subset of
/// valid ones). Scaffold counts are over unique valid molecules.
#[derive(Debug, Clone)]
pub struct EvaluationReport {
    pub total: usize,
    pub valid_count: usize,
    pub unique_count: usize,
    pub novel_count: usize,
    pub unique_scaffolds: usize,
    pub novel_scaffolds: usize,
    /// Novel scaffolds appearing fewer than 10 times among unique valid
    /// molecules; novel cores live in the long tail, so this is normally
    /// almost all of them.
    pub novel_scaffolds_rare: usize,
    pub error_profile: ErrorProfile,
    /// Mean tokenized length per scheme, when requested.
    pub mean_token_len: Vec<(String, f64)>,
}

impl EvaluationReport {
    pub fn valid_frac(&self) -> f64 {
        fraction(self.valid_count, self.total)
    }

    pub fn unique_frac(&self) -> f64 {
        fraction(self.unique_count, self.total)
    }

    pub fn novel_frac(&self) -> f64 {
        fraction(self.novel_count, self.total)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "total": self.total,
            "valid": self.valid_count,
            "unique": self.unique_count,
            "novel": self.novel_count,
            "valid_pct": self.valid_frac() * 100.0,
            "unique_pct": self.unique_frac() * 100.0,
            "novel_pct": self.novel_frac() * 100.0,
            "unique_scaffolds": self.unique_scaffolds,
            "novel_scaffolds": self.novel_scaffolds,
            "novel_scaffolds_rare": self.novel_scaffolds_rare,
            "error_profile": self.error_profile.to_json(),
            "mean_token_len": self
                .mean_token_len
                .iter()
                .map(|(scheme, len)| serde_json::json!({"scheme": scheme, "mean_len": len}))
                .collect::<Vec<_>>(),
        })
    }
}

fn fraction(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}

enum LineResult {
    Invalid(crate::validator::ValidationOutcome),
    Valid {
        key: CanonicalKey,
        scaffold: ScaffoldKey,
    },
}

/// Evaluate a generated corpus against reference key and scaffold sets.
///
/// A line is valid when it parses and kekulizes; unique when its
/// canonical key appears for the first time among valid lines; novel when
/// additionally absent from `reference_keys`. Reference sets must come
/// from the same canonicalizer (see the `index` CLI subcommand).
pub fn evaluate_corpus<S: AsRef<str> + Sync>(
    generated: &[S],
    reference_keys: &HashSet<CanonicalKey>,
    reference_scaffolds: &HashSet<ScaffoldKey>,
) -> EvaluationReport {
    let outcomes: Vec<LineResult> = generated
        .par_iter()
        .map(|line| {
            let text = line.as_ref();
            match parse_smiles(text) {
                Ok(graph) if kekulize_check(&graph).is_ok() => LineResult::Valid {
                    key: canonical_key(&graph).expect("kekulizability checked"),
                    scaffold: murcko_scaffold(&graph).expect("kekulizability checked"),
                },
                _ => LineResult::Invalid(validate(text, Mode::Full)),
            }
        })
        .collect();

    let mut report = EvaluationReport {
        total: generated.len(),
        valid_count: 0,
        unique_count: 0,
        novel_count: 0,
        unique_scaffolds: 0,
        novel_scaffolds: 0,
        novel_scaffolds_rare: 0,
        error_profile: ErrorProfile::new(),
        mean_token_len: Vec::new(),
    };
    let mut seen_keys: HashSet<CanonicalKey> = HashSet::new();
    let mut scaffold_counts: std::collections::HashMap<ScaffoldKey, usize> =
        std::collections::HashMap::new();
    for outcome in outcomes {
        match outcome {
            LineResult::Invalid(v) => {
                debug_assert!(!v.is_valid());
                report.error_profile.record(&v);
            }
            LineResult::Valid { key, scaffold } => {
                report
                    .error_profile
                    .record(&crate::validator::ValidationOutcome::valid());
                report.valid_count += 1;
                let novel = !reference_keys.contains(&key);
                if seen_keys.insert(key) {
                    report.unique_count += 1;
                    if novel {
                        report.novel_count += 1;
                    }
                    *scaffold_counts.entry(scaffold).or_insert(0) += 1;
                }
            }
        }
    }
    report.unique_scaffolds = scaffold_counts.len();
    for (scaffold, count) in &scaffold_counts {
        if !reference_scaffolds.contains(scaffold) {
            report.novel_scaffolds += 1;
            if *count < 10 {
                report.novel_scaffolds_rare += 1;
            }
        }
    }
    report
}

/// One row per labeled report, as CSV and JSON.
pub fn report_table(reports: &[(String, EvaluationReport)]) -> (String, serde_json::Value) {
    let mut csv = String::from(
        "label,valid_pct,unique_pct,novel_pct,unique_scaffolds,novel_scaffolds\n",
    );
    let mut rows = Vec::new();
    for (label, report) in reports {
        csv.push_str(&format!(
            "{},{:.2},{:.2},{:.2},{},{}\n",
            label,
            report.valid_frac() * 100.0,
            report.unique_frac() * 100.0,
            report.novel_frac() * 100.0,
            report.unique_scaffolds,
            report.novel_scaffolds
        ));
        rows.push(serde_json::json!({
            "label": label,
            "valid_pct": report.valid_frac() * 100.0,
            "unique_pct": report.unique_frac() * 100.0,
            "novel_pct": report.novel_frac() * 100.0,
            "unique_scaffolds": report.unique_scaffolds,
            "novel_scaffolds": report.novel_scaffolds,
        }));
    }
    (csv, serde_json::Value::Array(rows))
}

/// Build reference key and scaffold sets from a corpus, skipping invalid
/// lines.
pub fn index_reference<S: AsRef<str> + Sync>(
    corpus: &[S],
) -> (HashSet<CanonicalKey>, HashSet<ScaffoldKey>) {
    let pairs: Vec<Option<(CanonicalKey, ScaffoldKey)>> = corpus
        .par_iter()
        .map(|line| {
            let graph = parse_smiles(line.as_ref()).ok()?;
            kekulize_check(&graph).ok()?;
            let key = canonical_key(&graph).ok()?;
            let scaffold = murcko_scaffold(&graph).ok()?;
            Some((key, scaffold))
        })
        .collect();
    let mut keys = HashSet::new();
    let mut scaffolds = HashSet::new();
    for pair in pairs.into_iter().flatten() {
        keys.insert(pair.0);
        scaffolds.insert(pair.1);
    }
    (keys, scaffolds)
}
