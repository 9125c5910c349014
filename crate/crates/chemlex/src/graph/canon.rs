//! Canonical keys and SMILES serialization.
//!
//! The key is a canonical SMILES string produced by deterministic DFS over
//! atom priorities. Priorities come from iterative neighborhood refinement
//! (element, charge, hydrogen count, degree, ring membership, aromatic
//! flag, isotope, chirality marker), individualized until discrete: when a
//! tie class survives refinement its lowest-index member is split off and
//! refinement reruns. Tie classes that survive refinement are symmetry
//! orbits in molecular graphs, so the choice of member does not change the
//! resulting string.
//!
//! Chirality markers are carried as inert atom invariants: the writer
//! emits the stored marker verbatim and the parser stores the written
//! marker verbatim, so keys are stable under re-serialization. Two inputs
//! that differ only by `@` vs `@@` at one center get distinct keys.

use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::kekulize::kekulize_assignment;
use super::{BondOrder, Chirality, MolecularGraph};
use crate::validator::SmilesError;

/// Canonical text key of a molecular graph, the dedup handle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub String);

impl std::fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Canonical key of a graph. Fails when the aromatic system cannot be
/// kekulized, so that keys only exist for chemically admissible graphs.
pub fn canonical_key(g: &MolecularGraph) -> Result<CanonicalKey, SmilesError> {
    kekulize_assignment(g).map_err(|atom| {
        SmilesError::new(crate::validator::ErrorCategory::CannotKekulize, 0)
            .with_detail(format!("no double-bond partner for atom {atom}"))
    })?;
    Ok(CanonicalKey(canonical_string(g)))
}

/// The canonical serialization itself, without the kekulizability gate.
pub fn canonical_string(g: &MolecularGraph) -> String {
    write_smiles_by_priority(g, &discrete_ranks(g), true)
}

/// Re-serialize from an arbitrary root with seeded random branch order.
/// The output parses back to an isomorphic graph; used to exercise
/// order-invariance.
pub fn write_smiles_from_root(g: &MolecularGraph, root: usize, seed: u64) -> String {
    let n = g.atoms.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut priority: Vec<usize> = (1..=n).collect();
    priority.shuffle(&mut rng);
    if n > 0 {
        priority[root] = 0;
    }
    write_smiles_by_priority(g, &priority, false)
}

// ---------------------------------------------------------------------
// rank refinement
// ---------------------------------------------------------------------

fn dense_ranks<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}

fn class_count(ranks: &[usize]) -> usize {
    let mut seen: Vec<usize> = ranks.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn bond_code(order: BondOrder) -> u8 {
    match order {
        BondOrder::Single => 0,
        BondOrder::Double => 1,
        BondOrder::Triple => 2,
        BondOrder::Aromatic => 3,
    }
}

type AtomInvariant = (usize, &'static str, bool, i8, u16, u8, u8, bool);

fn initial_ranks(g: &MolecularGraph) -> Vec<usize> {
    // degree leads so that roots land on terminal atoms and the output
    // reads as a linear chain where possible
    let keys: Vec<AtomInvariant> = (0..g.atoms.len())
        .map(|i| {
            let a = &g.atoms[i];
            (
                g.degree(i),
                a.element,
                a.aromatic,
                a.formal_charge,
                a.isotope.unwrap_or(0),
                g.hydrogen_count(i),
                match a.chirality {
                    Chirality::None => 0,
                    Chirality::CounterClockwise => 1,
                    Chirality::Clockwise => 2,
                },
                a.in_ring,
            )
        })
        .collect();
    dense_ranks(&keys)
}

fn refine(g: &MolecularGraph, mut ranks: Vec<usize>) -> Vec<usize> {
    loop {
        let before = class_count(&ranks);
        let keys: Vec<(usize, Vec<(u8, usize)>)> = (0..g.atoms.len())
            .map(|i| {
                let mut nbrs: Vec<(u8, usize)> = g
                    .neighbors(i)
                    .iter()
                    .map(|&(j, b)| (bond_code(g.bonds[b].order), ranks[j]))
                    .collect();
                nbrs.sort_unstable();
                (ranks[i], nbrs)
            })
            .collect();
        let new = dense_ranks(&keys);
        let after = class_count(&new);
        ranks = new;
        if after == before {
            return ranks;
        }
    }
}

/// Refine until every atom has a unique rank.
fn discrete_ranks(g: &MolecularGraph) -> Vec<usize> {
    let n = g.atoms.len();
    let mut ranks = refine(g, initial_ranks(g));
    while class_count(&ranks) < n {
        // split the lowest-ranked surviving tie class at its first member
        let mut counts = vec![0usize; n];
        for &r in &ranks {
            counts[r] += 1;
        }
        let tied_rank = (0..n).find(|r| counts[*r] >= 2).unwrap();
        let member = ranks.iter().position(|r| *r == tied_rank).unwrap();
        let keys: Vec<(usize, u8)> = ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, u8::from(i != member)))
            .collect();
        ranks = refine(g, dense_ranks(&keys));
    }
    ranks
}

// ---------------------------------------------------------------------
// SMILES writer
// ---------------------------------------------------------------------

/// Serialize the graph with DFS order controlled by `priority` (lower
/// first; the minimum atom of each component is its root). When
/// `sort_components` is set, component strings are emitted in
/// lexicographic order, otherwise by component priority.
pub(crate) fn write_smiles_by_priority(
    g: &MolecularGraph,
    priority: &[usize],
    sort_components: bool,
) -> String {
    let mut parts: Vec<(usize, String)> = g
        .components()
        .into_iter()
        .map(|comp| {
            let &root = comp.iter().min_by_key(|&&i| priority[i]).unwrap();
            (priority[root], write_component(g, root, priority))
        })
        .collect();
    if sort_components {
        parts.sort_by(|a, b| a.1.cmp(&b.1));
    } else {
        parts.sort_by_key(|(p, _)| *p);
    }
    parts
        .into_iter()
        .map(|(_, s)| s)
        .collect::<Vec<_>>()
        .join(".")
}

fn write_component(g: &MolecularGraph, root: usize, priority: &[usize]) -> String {
    let n = g.atoms.len();
    let mut visited = vec![false; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut closures: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visit_order = vec![usize::MAX; n];
    let mut closure_seen = std::collections::HashSet::new();

    // Pass 1: fix the DFS tree (children in priority order) and collect
    // ring-closure edges. Atoms are marked visited on entry, exactly as a
    // recursive DFS would.
    struct Frame {
        v: usize,
        parent: Option<usize>,
        nbrs: Vec<usize>,
        idx: usize,
    }
    let sorted_nbrs = |v: usize| -> Vec<usize> {
        let mut nbrs: Vec<usize> = g.neighbors(v).iter().map(|&(j, _)| j).collect();
        nbrs.sort_by_key(|&j| priority[j]);
        nbrs
    };
    let mut counter = 0usize;
    visited[root] = true;
    visit_order[root] = counter;
    counter += 1;
    let mut stack = vec![Frame {
        v: root,
        parent: None,
        nbrs: sorted_nbrs(root),
        idx: 0,
    }];
    while let Some(frame) = stack.last_mut() {
        if frame.idx >= frame.nbrs.len() {
            stack.pop();
            continue;
        }
        let v = frame.v;
        let parent = frame.parent;
        let j = frame.nbrs[frame.idx];
        frame.idx += 1;
        if Some(j) == parent {
            continue;
        }
        if visited[j] {
            let key = (v.min(j), v.max(j));
            if closure_seen.insert(key) {
                closures[v].push(j);
                closures[j].push(v);
            }
        } else {
            visited[j] = true;
            visit_order[j] = counter;
            counter += 1;
            children[v].push(j);
            stack.push(Frame {
                v: j,
                parent: Some(v),
                nbrs: sorted_nbrs(j),
                idx: 0,
            });
        }
    }
    for list in closures.iter_mut() {
        list.sort_by_key(|&j| visit_order[j]);
    }

    // Pass 2: emit atoms in tree order, allocating the smallest free ring
    // digit at the first endpoint and releasing it at the second.
    enum Op {
        Atom { v: usize, parent: Option<usize> },
        Punct(char),
    }
    let mut digit_of: std::collections::HashMap<(usize, usize), u16> =
        std::collections::HashMap::new();
    let mut free: Vec<u16> = (1..100).rev().collect();
    let mut out = String::new();
    let mut ops = vec![Op::Atom {
        v: root,
        parent: None,
    }];
    while let Some(op) = ops.pop() {
        match op {
            Op::Punct(c) => out.push(c),
            Op::Atom { v, parent } => {
                if let Some(p) = parent {
                    let bond = g.bond_between(p, v).unwrap();
                    out.push_str(&bond_text(g, p, v, bond.order));
                }
                out.push_str(&atom_text(g, v));
                for &partner in &closures[v] {
                    let key = (v.min(partner), v.max(partner));
                    if let Some(&d) = digit_of.get(&key) {
                        push_digit(&mut out, d);
                        digit_of.remove(&key);
                        free.push(d);
                        free.sort_unstable_by(|a, b| b.cmp(a));
                    } else {
                        let d = free.pop().expect("ring closure digits exhausted");
                        digit_of.insert(key, d);
                        let bond = g.bond_between(v, partner).unwrap();
                        out.push_str(&bond_text(g, v, partner, bond.order));
                        push_digit(&mut out, d);
                    }
                }
                let k = children[v].len();
                for (idx, &c) in children[v].iter().enumerate().rev() {
                    if idx + 1 < k {
                        ops.push(Op::Punct(')'));
                        ops.push(Op::Atom { v: c, parent: Some(v) });
                        ops.push(Op::Punct('('));
                    } else {
                        ops.push(Op::Atom { v: c, parent: Some(v) });
                    }
                }
            }
        }
    }
    out
}

fn push_digit(out: &mut String, d: u16) {
    if d < 10 {
        out.push_str(&d.to_string());
    } else {
        out.push('%');
        out.push_str(&format!("{d:02}"));
    }
}

fn bond_text(g: &MolecularGraph, a: usize, b: usize, order: BondOrder) -> String {
    let both_aromatic = g.atoms[a].aromatic && g.atoms[b].aromatic;
    match order {
        BondOrder::Single => {
            if both_aromatic {
                "-".to_string()
            } else {
                String::new()
            }
        }
        BondOrder::Double => "=".to_string(),
        BondOrder::Triple => "#".to_string(),
        BondOrder::Aromatic => {
            if both_aromatic {
                String::new()
            } else {
                ":".to_string()
            }
        }
    }
}

/// Hydrogen count a parser would derive for the atom written plainly
/// (no explicit hydrogens, which can change the double-bond rule: plain
/// pyrrole nitrogen reads as pyridine-type).
fn derived_plain_h(g: &MolecularGraph, i: usize) -> u8 {
    let atom = &g.atoms[i];
    let effective = g.bond_order_sum(i) + u8::from(g.needs_ring_double_with_h(i, 0));
    match crate::validator::ValenceTable::new().allowed(atom.element, 0) {
        Some(allowed) => allowed
            .into_iter()
            .filter(|v| *v >= effective)
            .min()
            .map(|v| v - effective)
            .unwrap_or(0),
        None => 0,
    }
}

fn atom_text(g: &MolecularGraph, i: usize) -> String {
    let atom = &g.atoms[i];
    let symbol = if atom.aromatic {
        atom.element.to_lowercase()
    } else {
        atom.element.to_string()
    };

    let plain_writable = if atom.aromatic {
        matches!(atom.element, "B" | "C" | "N" | "O" | "P" | "S")
    } else {
        matches!(
            atom.element,
            "B" | "C" | "N" | "O" | "P" | "S" | "F" | "Cl" | "Br" | "I" | "*"
        )
    };
    let undecorated = atom.formal_charge == 0
        && atom.isotope.is_none()
        && atom.chirality == Chirality::None;
    if plain_writable && undecorated && g.hydrogen_count(i) == derived_plain_h(g, i) {
        return symbol;
    }

    let mut s = String::from("[");
    if let Some(iso) = atom.isotope {
        s.push_str(&iso.to_string());
    }
    s.push_str(&symbol);
    s.push_str(atom.chirality.marker());
    match g.hydrogen_count(i) {
        0 => {}
        1 => s.push('H'),
        h => {
            s.push('H');
            s.push_str(&h.to_string());
        }
    }
    match atom.formal_charge {
        0 => {}
        1 => s.push('+'),
        -1 => s.push('-'),
        c if c > 0 => s.push_str(&format!("+{c}")),
        c => s.push_str(&format!("-{}", -c)),
    }
    s.push(']');
    s
}
