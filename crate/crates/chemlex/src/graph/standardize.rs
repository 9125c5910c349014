//! Corpus standardization: fragment selection, kekulization gating, and
//! canonical-key deduplication.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canon::canonical_string;
use super::kekulize::kekulize_assignment;
use super::parser::parse_smiles;
use super::MolecularGraph;

/// Connected component with the most heavy atoms; ties broken by the
/// lexicographically smallest canonical serialization.
pub fn largest_fragment(g: &MolecularGraph) -> MolecularGraph {
    let components = g.components();
    if components.len() <= 1 {
        return g.clone();
    }
    let best = components
        .into_iter()
        .map(|comp| {
            let mut sub = g.induced_subgraph(&comp);
            sub.source = g.source.clone();
            let key = canonical_string(&sub);
            (comp.len(), key, sub)
        })
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
        .unwrap();
    best.2
}

/// Counts for one standardization run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardizeReport {
    pub input_count: usize,
    pub kept: usize,
    pub dropped_parse: usize,
    pub dropped_kekulize: usize,
    pub dropped_duplicate: usize,
}

enum LineOutcome {
    Ok { key: String, canonical: String },
    ParseFailed,
    KekulizeFailed,
}

/// Standardize a corpus: parse, keep the largest fragment, require
/// kekulizability, and drop duplicate canonical keys (first occurrence in
/// input order wins). Failures are counted, never raised.
///
/// Per-line work runs in parallel; the kept stream and the report are
/// deterministic regardless of thread count.
pub fn standardize_corpus<S: AsRef<str> + Sync>(
    lines: &[S],
) -> (Vec<String>, StandardizeReport) {
    let outcomes: Vec<LineOutcome> = lines
        .par_iter()
        .map(|line| match parse_smiles(line.as_ref()) {
            Err(_) => LineOutcome::ParseFailed,
            Ok(g) => {
                let fragment = largest_fragment(&g);
                match kekulize_assignment(&fragment) {
                    Err(_) => LineOutcome::KekulizeFailed,
                    Ok(_) => {
                        let canonical = canonical_string(&fragment);
                        LineOutcome::Ok {
                            key: canonical.clone(),
                            canonical,
                        }
                    }
                }
            }
        })
        .collect();

    let mut report = StandardizeReport {
        input_count: lines.len(),
        ..Default::default()
    };
    let mut seen = std::collections::HashSet::new();
    let mut kept = Vec::new();
    for outcome in outcomes {
        match outcome {
            LineOutcome::ParseFailed => report.dropped_parse += 1,
            LineOutcome::KekulizeFailed => report.dropped_kekulize += 1,
            LineOutcome::Ok { key, canonical } => {
                if seen.insert(key) {
                    report.kept += 1;
                    kept.push(canonical);
                } else {
                    report.dropped_duplicate += 1;
                }
            }
        }
    }
    (kept, report)
}
