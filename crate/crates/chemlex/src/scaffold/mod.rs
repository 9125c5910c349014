//! Bemis-Murcko scaffolds, scaffold-grouped splits, and rank-frequency
//! fitting.

mod split;
mod zipf;

pub use split::{random_split, scaffold_split, split_plan_csv, Partition, SplitMode, SplitPlan};
pub use zipf::{zipf_fit, zipf_fit_counts, ZipfFit};

use std::collections::HashSet;

use crate::graph::{canonical_key, Chirality, MolecularGraph};
use crate::validator::SmilesError;

/// Canonical text key of a molecule's scaffold; empty for acyclic
/// molecules.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaffoldKey(pub String);

impl ScaffoldKey {
    pub fn empty() -> Self {
        ScaffoldKey(String::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for ScaffoldKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// The scaffold subgraph: iteratively remove terminal atoms (degree <= 1)
/// that are outside every ring and attached by a single bond. Ring
/// systems, the linkers between them, and multiply-bonded terminal
/// attachments (a carbonyl on a retained atom) survive. `None` for
/// acyclic molecules.
pub fn murcko_scaffold_graph(g: &MolecularGraph) -> Option<MolecularGraph> {
    if !g.atoms.iter().any(|a| a.in_ring) {
        return None;
    }
    let n = g.atoms.len();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for i in 0..n {
            if !alive[i] || g.atoms[i].in_ring {
                continue;
            }
            let live_bonds: Vec<usize> = g
                .neighbors(i)
                .iter()
                .filter(|(j, _)| alive[*j])
                .map(|(_, b)| *b)
                .collect();
            let deletable = match live_bonds.len() {
                0 => true,
                1 => g.bonds[live_bonds[0]].order == crate::graph::BondOrder::Single,
                _ => false,
            };
            if deletable {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let mut scaffold = g.induced_subgraph(&keep);
    for atom in &mut scaffold.atoms {
        atom.chirality = Chirality::None;
    }
    scaffold.source = g.source.clone();
    Some(scaffold)
}

/// Scaffold key of a molecule: canonical key of the pruned scaffold with
/// chirality stripped; the empty key for acyclic molecules.
pub fn murcko_scaffold(g: &MolecularGraph) -> Result<ScaffoldKey, SmilesError> {
    match murcko_scaffold_graph(g) {
        None => Ok(ScaffoldKey::empty()),
        Some(scaffold) => Ok(ScaffoldKey(canonical_key(&scaffold)?.0)),
    }
}

/// Jaccard similarity of two scaffold-key sets; empty vs empty is 1.
pub fn scaffold_set_jaccard(a: &HashSet<ScaffoldKey>, b: &HashSet<ScaffoldKey>) -> f64 {
    let intersection = a.intersection(b).count();
    let union = a.union(b).count();
    if union == 0 {
        1.0
    } else {
        intersection as f64 / union as f64
    }
}
