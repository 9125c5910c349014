//! Molecular graphs parsed from SMILES text.

pub mod canon;
pub mod elements;
mod kekulize;
mod matching;
pub(crate) mod parser;
mod standardize;

pub use canon::{canonical_key, canonical_string, write_smiles_from_root, CanonicalKey};
pub use kekulize::{double_bond_count, kekulize};
pub(crate) use kekulize::kekulize_check;
pub use matching::maximum_matching;
pub use parser::{parse_layout, parse_smiles, ParsedSmiles};
pub use standardize::{largest_fragment, standardize_corpus, StandardizeReport};

use crate::validator::ValenceTable;

/// Bond multiplicity. Aromatic bonds count 1 toward valence sums; an
/// aromatic atom that must host a ring double bond contributes the extra
/// unit through [`MolecularGraph::needs_ring_double`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BondOrder {
    Single,
    Double,
    Triple,
    Aromatic,
}

impl BondOrder {
    /// Contribution to an atom's bond order sum.
    pub fn valence_units(self) -> u8 {
        match self {
            BondOrder::Single | BondOrder::Aromatic => 1,
            BondOrder::Double => 2,
            BondOrder::Triple => 3,
        }
    }

    pub fn symbol(self) -> Option<char> {
        match self {
            BondOrder::Single => None,
            BondOrder::Double => Some('='),
            BondOrder::Triple => Some('#'),
            BondOrder::Aromatic => Some(':'),
        }
    }
}

/// Tetrahedral chirality marker, kept exactly as written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum Chirality {
    #[default]
    None,
    /// `@@`
    Clockwise,
    /// `@`
    CounterClockwise,
}

impl Chirality {
    pub fn marker(self) -> &'static str {
        match self {
            Chirality::None => "",
            Chirality::Clockwise => "@@",
            Chirality::CounterClockwise => "@",
        }
    }

    /// Swap `@` and `@@`; identity for achiral atoms.
    pub fn flipped(self) -> Chirality {
        match self {
            Chirality::None => Chirality::None,
            Chirality::Clockwise => Chirality::CounterClockwise,
            Chirality::CounterClockwise => Chirality::Clockwise,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    /// Canonical element symbol (`"C"`, `"Cl"`, `"*"`).
    pub element: &'static str,
    pub aromatic: bool,
    pub formal_charge: i8,
    /// Present iff the atom was written in square brackets.
    pub explicit_h: Option<u8>,
    pub chirality: Chirality,
    /// Derived: the atom lies on a cycle.
    pub in_ring: bool,
    pub isotope: Option<u16>,
}

impl Atom {
    pub fn new(element: &'static str, aromatic: bool) -> Self {
        Atom {
            element,
            aromatic,
            formal_charge: 0,
            explicit_h: None,
            chirality: Chirality::None,
            in_ring: false,
            isotope: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub order: BondOrder,
    /// Derived: the bond lies on a cycle.
    pub ring_bond: bool,
}

/// An immutable molecular graph plus the SMILES text it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolecularGraph {
    pub atoms: Vec<Atom>,
    pub bonds: Vec<Bond>,
    pub source: String,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl MolecularGraph {
    /// Build a graph from parts, deriving adjacency and ring flags.
    ///
    /// Panics if a bond endpoint is out of range, a bond is a self-loop,
    /// or two bonds join the same atom pair.
    pub fn new(atoms: Vec<Atom>, bonds: Vec<Bond>, source: String) -> Self {
        let mut graph = MolecularGraph {
            atoms,
            bonds,
            source,
            adjacency: Vec::new(),
        };
        graph.rebuild_derived();
        graph
    }

    fn rebuild_derived(&mut self) {
        let n = self.atoms.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for (idx, bond) in self.bonds.iter().enumerate() {
            assert!(bond.a < n && bond.b < n, "bond endpoint out of range");
            assert_ne!(bond.a, bond.b, "self-loop bond");
            let key = (bond.a.min(bond.b), bond.a.max(bond.b));
            assert!(seen.insert(key), "duplicate bond between {key:?}");
            adjacency[bond.a].push((bond.b, idx));
            adjacency[bond.b].push((bond.a, idx));
        }
        self.adjacency = adjacency;
        self.mark_rings();
    }

    /// Neighbors of atom `i` as `(neighbor, bond index)`, in bond
    /// creation order.
    pub fn neighbors(&self, i: usize) -> &[(usize, usize)] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn bond_between(&self, i: usize, j: usize) -> Option<&Bond> {
        self.adjacency[i]
            .iter()
            .find(|(n, _)| *n == j)
            .map(|(_, b)| &self.bonds[*b])
    }

    /// Sum of bond orders at `i`, counting aromatic bonds as one unit.
    pub fn bond_order_sum(&self, i: usize) -> u8 {
        self.adjacency[i]
            .iter()
            .map(|(_, b)| self.bonds[*b].order.valence_units())
            .sum()
    }

    /// Whether an aromatic atom must host one double bond within its
    /// aromatic system when kekulizing.
    ///
    /// An aromatic atom needs the double unless it already carries a
    /// double/triple bond, it is an O/S/Se lone-pair donor, or it is a
    /// neutral N/P/As of pyrrole type (explicit hydrogen or three heavy
    /// neighbors). Positively charged atoms of either family become
    /// pyridinium/pyrylium-like and take the double; anionic N/P/As and
    /// charged carbons donate or stay empty and do not.
    pub fn needs_ring_double(&self, i: usize) -> bool {
        self.needs_ring_double_with_h(i, self.atoms[i].explicit_h.unwrap_or(0))
    }

    /// Same rule with a hypothetical hydrogen count, used when deciding
    /// whether an atom can be rewritten without brackets.
    pub(crate) fn needs_ring_double_with_h(&self, i: usize, hydrogens: u8) -> bool {
        let atom = &self.atoms[i];
        if !atom.aromatic {
            return false;
        }
        let has_multiple_bond = self.adjacency[i].iter().any(|(_, b)| {
            matches!(self.bonds[*b].order, BondOrder::Double | BondOrder::Triple)
        });
        if has_multiple_bond {
            return false;
        }
        match atom.element {
            "O" | "S" | "Se" => atom.formal_charge > 0,
            "N" | "P" | "As" => {
                if atom.formal_charge > 0 {
                    true
                } else if atom.formal_charge < 0 {
                    false
                } else {
                    hydrogens == 0 && self.degree(i) < 3
                }
            }
            _ => atom.formal_charge == 0,
        }
    }

    /// Total hydrogen count: explicit for bracket atoms, otherwise the
    /// implicit fill to the smallest allowed valence.
    pub fn hydrogen_count(&self, i: usize) -> u8 {
        let atom = &self.atoms[i];
        if let Some(h) = atom.explicit_h {
            return h;
        }
        let effective =
            self.bond_order_sum(i) + u8::from(self.needs_ring_double(i));
        let table = ValenceTable::new();
        match table.allowed(atom.element, atom.formal_charge) {
            Some(allowed) => allowed
                .into_iter()
                .filter(|v| *v >= effective)
                .min()
                .map(|v| v - effective)
                .unwrap_or(0),
            None => 0,
        }
    }

    pub fn heavy_atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Connected components as lists of atom indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.atoms.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut component = Vec::new();
            seen[start] = true;
            while let Some(i) = stack.pop() {
                component.push(i);
                for &(j, _) in &self.adjacency[i] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            component.sort_unstable();
            out.push(component);
        }
        out
    }

    /// Induced subgraph on `keep` (sorted, deduplicated internally).
    pub fn induced_subgraph(&self, keep: &[usize]) -> MolecularGraph {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut remap = vec![usize::MAX; self.atoms.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let atoms: Vec<Atom> = keep.iter().map(|&i| self.atoms[i].clone()).collect();
        let bonds: Vec<Bond> = self
            .bonds
            .iter()
            .filter(|b| remap[b.a] != usize::MAX && remap[b.b] != usize::MAX)
            .map(|b| Bond {
                a: remap[b.a],
                b: remap[b.b],
                order: b.order,
                ring_bond: false,
            })
            .collect();
        MolecularGraph::new(atoms, bonds, String::new())
    }

    /// Mark ring bonds (non-bridge edges) and ring atoms.
    fn mark_rings(&mut self) {
        let n = self.atoms.len();
        let bridges = self.find_bridges();
        for (idx, bond) in self.bonds.iter_mut().enumerate() {
            bond.ring_bond = !bridges[idx];
        }
        for atom in &mut self.atoms {
            atom.in_ring = false;
        }
        for i in 0..n {
            let in_ring = self.adjacency[i]
                .iter()
                .any(|(_, b)| self.bonds[*b].ring_bond);
            self.atoms[i].in_ring = in_ring;
        }
    }

    /// Bridge detection via iterative Tarjan lowlink.
    fn find_bridges(&self) -> Vec<bool> {
        let n = self.atoms.len();
        let mut bridge = vec![false; self.bonds.len()];
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0usize;

        for start in 0..n {
            if disc[start] != usize::MAX {
                continue;
            }
            // stack frame: (node, incoming bond, next neighbor position)
            let mut stack: Vec<(usize, usize, usize)> = vec![(start, usize::MAX, 0)];
            disc[start] = timer;
            low[start] = timer;
            timer += 1;
            while let Some(&mut (v, in_bond, ref mut pos)) = stack.last_mut() {
                if *pos < self.adjacency[v].len() {
                    let (to, b) = self.adjacency[v][*pos];
                    *pos += 1;
                    if b == in_bond {
                        continue;
                    }
                    if disc[to] == usize::MAX {
                        disc[to] = timer;
                        low[to] = timer;
                        timer += 1;
                        stack.push((to, b, 0));
                    } else {
                        low[v] = low[v].min(disc[to]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (parent, _, _)) = stack.last_mut() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            bridge[in_bond] = true;
                        }
                    }
                }
            }
        }
        bridge
    }
}
