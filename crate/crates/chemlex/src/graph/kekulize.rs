//! Aromatic system kekulization.

use super::matching::maximum_matching;
use super::{BondOrder, MolecularGraph};
use crate::validator::{ErrorCategory, SmilesError};

/// Assign explicit alternating bonds to every aromatic system.
///
/// Atoms that must host one ring double bond (see
/// [`MolecularGraph::needs_ring_double`]) are paired up along aromatic
/// bonds by maximum matching; kekulization succeeds iff the pairing is
/// perfect. The result clears aromatic flags and rewrites every aromatic
/// bond as single or double; non-aromatic parts are unchanged.
pub fn kekulize(g: &MolecularGraph) -> Result<MolecularGraph, SmilesError> {
    let mate = kekulize_assignment(g).map_err(|atom| {
        SmilesError::new(ErrorCategory::CannotKekulize, 0)
            .with_detail(format!("no double-bond partner for atom {atom}"))
    })?;

    let atoms = g
        .atoms
        .iter()
        .map(|a| {
            let mut a = a.clone();
            a.aromatic = false;
            a
        })
        .collect();
    let bonds = g
        .bonds
        .iter()
        .map(|b| {
            let mut b = *b;
            if b.order == BondOrder::Aromatic {
                b.order = if mate[b.a] == Some(b.b) {
                    BondOrder::Double
                } else {
                    BondOrder::Single
                };
            }
            b
        })
        .collect();
    Ok(MolecularGraph::new(atoms, bonds, g.source.clone()))
}

/// Feasibility check without building the kekulized graph.
pub(crate) fn kekulize_check(g: &MolecularGraph) -> Result<(), usize> {
    kekulize_assignment(g).map(|_| ())
}

/// The double-bond pairing for aromatic atoms, or the index of the first
/// atom that cannot be paired.
pub(crate) fn kekulize_assignment(g: &MolecularGraph) -> Result<Vec<Option<usize>>, usize> {
    let n = g.atoms.len();
    let needs: Vec<bool> = (0..n).map(|i| g.needs_ring_double(i)).collect();

    let edges: Vec<(usize, usize)> = g
        .bonds
        .iter()
        .filter(|b| b.order == BondOrder::Aromatic && needs[b.a] && needs[b.b])
        .map(|b| (b.a, b.b))
        .collect();

    let mate = maximum_matching(n, &edges);
    for i in 0..n {
        if needs[i] && mate[i].is_none() {
            return Err(i);
        }
    }
    Ok(mate)
}

/// Number of double bonds in a graph.
pub fn double_bond_count(g: &MolecularGraph) -> usize {
    g.bonds
        .iter()
        .filter(|b| b.order == BondOrder::Double)
        .count()
}
