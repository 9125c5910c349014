//! Seeded generation of synthetic SMILES corpora.
//!
//! Molecules are assembled as graphs under explicit free-valence budgets
//! and serialized from a random root, so every emitted string parses and
//! kekulizes by construction. Used by tests and benchmarks; corpora are
//! reproducible from the seed.

use rand::prelude::*;

use crate::graph::{
    write_smiles_from_root, Atom, Bond, BondOrder, Chirality, MolecularGraph,
};
use crate::seed::stream_rng;

/// Knobs for molecule generation.
#[derive(Debug, Clone)]
pub struct SynthConfig {
    /// Decoration rounds per molecule (bounded by free valence).
    pub max_decorations: usize,
    /// Probability of marking an eligible carbon chiral.
    pub chirality_prob: f64,
    /// Probability of an isotope label somewhere.
    pub isotope_prob: f64,
    /// Probability of appending a counter-ion fragment.
    pub fragment_prob: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            max_decorations: 8,
            chirality_prob: 0.15,
            isotope_prob: 0.05,
            fragment_prob: 0.05,
        }
    }
}

struct Builder {
    atoms: Vec<Atom>,
    bonds: Vec<Bond>,
    free: Vec<u8>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            atoms: Vec::new(),
            bonds: Vec::new(),
            free: Vec::new(),
        }
    }

    fn add(&mut self, atom: Atom, budget: u8) -> usize {
        self.atoms.push(atom);
        self.free.push(budget);
        self.atoms.len() - 1
    }

    fn bond(&mut self, a: usize, b: usize, order: BondOrder) {
        let cost = order.valence_units();
        debug_assert!(self.free[a] >= cost && self.free[b] >= cost);
        self.free[a] -= cost;
        self.free[b] -= cost;
        self.bonds.push(Bond {
            a,
            b,
            order,
            ring_bond: false,
        });
    }

    fn open_atoms(&self, min_free: u8) -> Vec<usize> {
        (0..self.atoms.len())
            .filter(|&i| self.free[i] >= min_free)
            .collect()
    }

    fn finish(self) -> MolecularGraph {
        MolecularGraph::new(self.atoms, self.bonds, String::new())
    }
}

fn plain(element: &'static str) -> Atom {
    Atom::new(element, false)
}

fn aromatic(element: &'static str) -> Atom {
    Atom::new(element, true)
}

/// Append an aromatic ring to the builder; returns its atom indices.
/// Budgets already account for ring bonds and the kekule double bond.
fn aromatic_ring(b: &mut Builder, rng: &mut impl Rng) -> Vec<usize> {
    let flavor = rng.gen_range(0..6);
    let members: Vec<(Atom, u8)> = match flavor {
        // benzene
        0 | 1 => (0..6).map(|_| (aromatic("C"), 1)).collect(),
        // pyridine
        2 => {
            let mut m: Vec<(Atom, u8)> = (0..5).map(|_| (aromatic("C"), 1)).collect();
            m.push((aromatic("N"), 0));
            m
        }
        // pyrrole
        3 => {
            let mut nh = aromatic("N");
            nh.explicit_h = Some(1);
            let mut m = vec![(nh, 0)];
            m.extend((0..4).map(|_| (aromatic("C"), 1)));
            m
        }
        // furan / thiophene
        4 => {
            let hetero = if rng.gen_bool(0.5) { "O" } else { "S" };
            let mut m = vec![(aromatic(hetero), 0)];
            m.extend((0..4).map(|_| (aromatic("C"), 1)));
            m
        }
        // naphthalene
        _ => Vec::new(),
    };

    if members.is_empty() {
        // fused pair: ten carbons, two shared
        let ring: Vec<usize> = (0..10)
            .map(|i| {
                let budget = if i == 0 || i == 5 { 0 } else { 1 };
                b.add(aromatic("C"), budget + 3)
            })
            .collect();
        // outer cycle 0..10 plus the fusion bond 0-5
        for i in 0..10 {
            b.bond(ring[i], ring[(i + 1) % 10], BondOrder::Aromatic);
        }
        b.bond(ring[0], ring[5], BondOrder::Aromatic);
        for &i in &ring {
            // consume the kekule double-bond unit
            b.free[i] = b.free[i].saturating_sub(1);
        }
        return ring;
    }

    // budgets are net of the two ring bonds and the kekule double bond
    let ring: Vec<usize> = members
        .into_iter()
        .map(|(atom, budget)| b.add(atom, budget + 2))
        .collect();
    let k = ring.len();
    for i in 0..k {
        b.bond(ring[i], ring[(i + 1) % k], BondOrder::Aromatic);
    }
    ring
}

/// Append an aliphatic ring; returns its atom indices.
fn aliphatic_ring(b: &mut Builder, rng: &mut impl Rng) -> Vec<usize> {
    let size = rng.gen_range(3..=7);
    let ring: Vec<usize> = (0..size)
        .map(|i| {
            if i > 0 && rng.gen_bool(0.15) {
                let hetero = if rng.gen_bool(0.5) { "O" } else { "N" };
                let budget = if hetero == "O" { 2 } else { 3 };
                b.add(plain(hetero), budget)
            } else {
                b.add(plain("C"), 4)
            }
        })
        .collect();
    for i in 0..size {
        b.bond(ring[i], ring[(i + 1) % size], BondOrder::Single);
    }
    ring
}

fn chain(b: &mut Builder, rng: &mut impl Rng, from: usize, len: usize) {
    let mut prev = from;
    for _ in 0..len {
        if b.free[prev] == 0 {
            break;
        }
        let next = b.add(plain("C"), 4);
        b.bond(prev, next, BondOrder::Single);
        prev = next;
        if b.free[prev] >= 3 && rng.gen_bool(0.2) {
            let o = b.add(plain("O"), 2);
            b.bond(prev, o, BondOrder::Double);
        }
    }
}

fn decorate(b: &mut Builder, rng: &mut impl Rng) {
    let candidates = b.open_atoms(1);
    let Some(&site) = candidates.choose(rng) else {
        return;
    };
    match rng.gen_range(0..10) {
        0..=3 => {
            let len = rng.gen_range(1..=4);
            chain(b, rng, site, len);
        }
        4 => {
            let halogen = ["F", "Cl", "Br", "I"].choose(rng).unwrap();
            let x = b.add(plain(crate::graph::elements::lookup(halogen).unwrap()), 1);
            b.bond(site, x, BondOrder::Single);
        }
        5 => {
            let o = b.add(plain("O"), 2);
            b.bond(site, o, BondOrder::Single);
        }
        6 => {
            let n = b.add(plain("N"), 3);
            b.bond(site, n, BondOrder::Single);
        }
        7 => {
            if b.free[site] >= 2 {
                let o = b.add(plain("O"), 2);
                b.bond(site, o, BondOrder::Double);
            }
        }
        8 => {
            if b.free[site] >= 1 {
                let c = b.add(plain("C"), 4);
                b.bond(site, c, BondOrder::Single);
                let n = b.add(plain("N"), 3);
                b.bond(c, n, BondOrder::Triple);
            }
        }
        _ => {
            // attach a fresh ring through a linker atom
            let linker = b.add(plain("C"), 4);
            b.bond(site, linker, BondOrder::Single);
            let ring = if rng.gen_bool(0.5) {
                aromatic_ring(b, rng)
            } else {
                aliphatic_ring(b, rng)
            };
            let attachable: Vec<usize> =
                ring.iter().copied().filter(|&i| b.free[i] >= 1).collect();
            if let Some(&target) = attachable.choose(rng) {
                if b.free[linker] >= 1 {
                    b.bond(linker, target, BondOrder::Single);
                }
            }
        }
    }
}

/// Generate one random molecule.
pub fn random_molecule(rng: &mut impl Rng, cfg: &SynthConfig) -> MolecularGraph {
    let mut b = Builder::new();
    match rng.gen_range(0..10) {
        0..=3 => {
            aromatic_ring(&mut b, rng);
        }
        4..=6 => {
            aliphatic_ring(&mut b, rng);
        }
        _ => {
            let start = b.add(plain("C"), 4);
            let len = rng.gen_range(1..=6);
            chain(&mut b, rng, start, len);
        }
    }
    for _ in 0..rng.gen_range(0..=cfg.max_decorations) {
        decorate(&mut b, rng);
    }

    // chirality markers on saturated carbons with three heavy neighbors
    let bond_count = |b: &Builder, i: usize| {
        b.bonds.iter().filter(|bd| bd.a == i || bd.b == i).count()
    };
    for i in 0..b.atoms.len() {
        let saturated = b
            .bonds
            .iter()
            .filter(|bd| bd.a == i || bd.b == i)
            .all(|bd| bd.order == BondOrder::Single);
        if b.atoms[i].element == "C"
            && !b.atoms[i].aromatic
            && saturated
            && bond_count(&b, i) >= 3
            && rng.gen_bool(cfg.chirality_prob)
        {
            b.atoms[i].chirality = if rng.gen_bool(0.5) {
                Chirality::Clockwise
            } else {
                Chirality::CounterClockwise
            };
        }
    }
    if rng.gen_bool(cfg.isotope_prob) {
        let i = rng.gen_range(0..b.atoms.len());
        if b.atoms[i].element == "C" && !b.atoms[i].aromatic {
            b.atoms[i].isotope = Some(if rng.gen_bool(0.5) { 13 } else { 14 });
        }
    }
    if rng.gen_bool(cfg.fragment_prob) {
        let (element, charge) = [("Na", 1i8), ("K", 1), ("Cl", -1), ("Br", -1)]
            .choose(rng)
            .copied()
            .unwrap();
        let mut ion = plain(crate::graph::elements::lookup(element).unwrap());
        ion.formal_charge = charge;
        ion.explicit_h = Some(0);
        b.add(ion, 0);
    }
    b.finish()
}

/// Generate one random valid SMILES string.
pub fn random_smiles(rng: &mut impl Rng, cfg: &SynthConfig) -> String {
    let graph = random_molecule(rng, cfg);
    let root = rng.gen_range(0..graph.atoms.len());
    write_smiles_from_root(&graph, root, rng.gen())
}

/// A reproducible corpus of `n` random valid SMILES.
pub fn corpus(seed: u64, n: usize) -> Vec<String> {
    let cfg = SynthConfig::default();
    let mut rng = stream_rng(seed, 0x0c0e);
    (0..n).map(|_| random_smiles(&mut rng, &cfg)).collect()
}

/// A bare ring system (no decorations), for scaffold-family corpora.
pub fn ring_core(rng: &mut impl Rng) -> MolecularGraph {
    let mut b = Builder::new();
    if rng.gen_bool(0.5) {
        aromatic_ring(&mut b, rng);
    } else {
        aliphatic_ring(&mut b, rng);
    }
    // occasionally link a second ring to diversify cores
    if rng.gen_bool(0.4) {
        let first: Vec<usize> = b.open_atoms(1);
        let ring = if rng.gen_bool(0.5) {
            aromatic_ring(&mut b, rng)
        } else {
            aliphatic_ring(&mut b, rng)
        };
        if let Some(&a) = first.choose(rng) {
            let targets: Vec<usize> =
                ring.iter().copied().filter(|&i| b.free[i] >= 1).collect();
            if let Some(&t) = targets.choose(rng) {
                b.bond(a, t, BondOrder::Single);
            }
        }
    }
    b.finish()
}

/// Decorate a core with prunable substituents only (single-bonded alkyl
/// chains and halogens), leaving its scaffold unchanged.
pub fn decorate_with_chains(rng: &mut impl Rng, core: &MolecularGraph) -> String {
    let mut b = Builder::new();
    for atom in &core.atoms {
        b.add(atom.clone(), 0);
    }
    for bond in &core.bonds {
        b.bonds.push(*bond);
    }
    // recompute free budgets from valences; bracket atoms and aromatic
    // heteroatoms stay untouched (substitution would change their
    // hydrogen count or flip their double-bond contribution)
    for i in 0..core.atoms.len() {
        let atom = &core.atoms[i];
        if atom.explicit_h.is_some() || (atom.aromatic && atom.element != "C") {
            b.free[i] = 0;
            continue;
        }
        let max = crate::validator::ValenceTable::new()
            .max_allowed(atom.element, atom.formal_charge)
            .unwrap_or(0);
        let used = core.bond_order_sum(i) + u8::from(core.needs_ring_double(i));
        b.free[i] = max.saturating_sub(used);
    }
    for _ in 0..rng.gen_range(1..=3) {
        let sites = b.open_atoms(1);
        let Some(&site) = sites.choose(rng) else { break };
        if rng.gen_bool(0.8) {
            let mut prev = site;
            for _ in 0..rng.gen_range(1..=3) {
                if b.free[prev] == 0 {
                    break;
                }
                let c = b.add(plain("C"), 4);
                b.bond(prev, c, BondOrder::Single);
                prev = c;
            }
        } else {
            let halogen = ["F", "Cl"].choose(rng).unwrap();
            let x = b.add(plain(crate::graph::elements::lookup(halogen).unwrap()), 1);
            b.bond(site, x, BondOrder::Single);
        }
    }
    let g = b.finish();
    let root = rng.gen_range(0..g.atoms.len());
    write_smiles_from_root(&g, root, rng.gen())
}

/// A random aromatic ring system (single ring or edge-fused pair) that
/// always parses but may or may not kekulize; for matching oracles.
pub fn random_aromatic_system(rng: &mut impl Rng) -> String {
    let mut b = Builder::new();
    let size = rng.gen_range(3..=8);
    let ring: Vec<usize> = (0..size)
        .map(|i| {
            let roll = rng.gen_range(0..10);
            if i == 0 || roll < 6 {
                b.add(aromatic("C"), 4)
            } else if roll < 8 {
                b.add(aromatic("N"), 3)
            } else if roll == 8 {
                let mut nh = aromatic("N");
                nh.explicit_h = Some(1);
                b.add(nh, 3)
            } else {
                let hetero = if rng.gen_bool(0.5) { "O" } else { "S" };
                b.add(aromatic(hetero), 2)
            }
        })
        .collect();
    for i in 0..size {
        b.bond(ring[i], ring[(i + 1) % size], BondOrder::Aromatic);
    }
    if rng.gen_bool(0.5) && size >= 4 {
        // fuse a second ring on the 0-1 edge; shared atoms must be C or N
        let extra = rng.gen_range(1..=4);
        let fusable = |i: usize| {
            b.atoms[i].element != "O"
                && b.atoms[i].element != "S"
                && b.atoms[i].explicit_h.unwrap_or(0) == 0
        };
        if fusable(ring[0]) && fusable(ring[1]) {
            let mut prev = ring[0];
            for _ in 0..extra {
                let c = b.add(aromatic("C"), 4);
                b.bond(prev, c, BondOrder::Aromatic);
                prev = c;
            }
            b.bond(prev, ring[1], BondOrder::Aromatic);
        }
    }
    let g = b.finish();
    let root = rng.gen_range(0..g.atoms.len());
    write_smiles_from_root(&g, root, rng.gen())
}
