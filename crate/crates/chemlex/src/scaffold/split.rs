//! Dataset splits: random, and scaffold-grouped with group atomicity.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{murcko_scaffold, ScaffoldKey};
use crate::graph::parse_smiles;
use crate::seed::stream_rng;
use crate::validator::SmilesError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitMode {
    Random,
    Scaffold,
}

impl std::str::FromStr for SplitMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(SplitMode::Random),
            "scaffold" => Ok(SplitMode::Scaffold),
            other => Err(format!("unknown split mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Partition {
    Train,
    Valid,
    Test,
}

impl Partition {
    pub const ALL: [Partition; 3] = [Partition::Train, Partition::Valid, Partition::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            Partition::Train => "train",
            Partition::Valid => "valid",
            Partition::Test => "test",
        }
    }
}

/// A molecule-to-partition assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitPlan {
    pub mode: SplitMode,
    pub seed: u64,
    pub fractions: (f64, f64, f64),
    /// Partition per input molecule, in input order.
    pub assignment: Vec<Partition>,
    /// Scaffold key per molecule (empty keys for acyclic molecules).
    pub scaffold_keys: Vec<ScaffoldKey>,
}

impl SplitPlan {
    pub fn counts(&self) -> [usize; 3] {
        let mut counts = [0usize; 3];
        for p in &self.assignment {
            counts[*p as usize] += 1;
        }
        counts
    }

    /// Realized fractions of the three partitions.
    pub fn realized_fractions(&self) -> [f64; 3] {
        let n = self.assignment.len().max(1) as f64;
        self.counts().map(|c| c as f64 / n)
    }
}

fn check_fractions(fractions: (f64, f64, f64)) -> Result<(), SmilesError> {
    let (a, b, c) = fractions;
    let ok = a > 0.0 && b > 0.0 && c > 0.0 && (a + b + c - 1.0).abs() < 1e-9;
    if !ok {
        return Err(SmilesError::new(
            crate::validator::ErrorCategory::IllegalCharacter,
            0,
        )
        .with_detail(format!(
            "split fractions must be positive and sum to 1, got {a}, {b}, {c}"
        )));
    }
    Ok(())
}

/// Group molecules by scaffold and assign whole groups to partitions.
///
/// Groups are ordered by descending size (ties by key) and each lands in
/// the partition currently furthest below its target count, preferring
/// train, then valid, then test on ties. A group never straddles two
/// partitions, so realized fractions can deviate by up to the largest
/// group's size.
pub fn scaffold_split<S: AsRef<str>>(
    mols: &[S],
    fractions: (f64, f64, f64),
    seed: u64,
) -> Result<SplitPlan, SmilesError> {
    check_fractions(fractions)?;
    let keys: Result<Vec<ScaffoldKey>, SmilesError> = mols
        .iter()
        .map(|s| murcko_scaffold(&parse_smiles(s.as_ref())?))
        .collect();
    let keys = keys?;

    let mut groups: BTreeMap<&ScaffoldKey, Vec<usize>> = BTreeMap::new();
    for (idx, key) in keys.iter().enumerate() {
        groups.entry(key).or_default().push(idx);
    }
    let mut ordered: Vec<(&ScaffoldKey, Vec<usize>)> = groups.into_iter().collect();
    ordered.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.0.cmp(b.0)));

    let n = mols.len() as f64;
    let targets = [fractions.0 * n, fractions.1 * n, fractions.2 * n];
    let mut filled = [0usize; 3];
    let mut assignment = vec![Partition::Train; mols.len()];
    for (_, members) in ordered {
        let deficit = |slot: usize| targets[slot] - filled[slot] as f64;
        let mut best = 0usize;
        for slot in 1..3 {
            if deficit(slot) > deficit(best) + 1e-12 {
                best = slot;
            }
        }
        for idx in &members {
            assignment[*idx] = Partition::ALL[best];
        }
        filled[best] += members.len();
    }

    Ok(SplitPlan {
        mode: SplitMode::Scaffold,
        seed,
        fractions,
        assignment,
        scaffold_keys: keys,
    })
}

/// Seeded uniform split at the exact fraction boundaries.
pub fn random_split<S: AsRef<str>>(
    mols: &[S],
    fractions: (f64, f64, f64),
    seed: u64,
) -> Result<SplitPlan, SmilesError> {
    check_fractions(fractions)?;
    let keys: Result<Vec<ScaffoldKey>, SmilesError> = mols
        .iter()
        .map(|s| murcko_scaffold(&parse_smiles(s.as_ref())?))
        .collect();
    let keys = keys?;

    let n = mols.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut stream_rng(seed, 0x5f11));
    let train_end = (fractions.0 * n as f64).round() as usize;
    let valid_end = ((fractions.0 + fractions.1) * n as f64).round() as usize;
    let mut assignment = vec![Partition::Train; n];
    for (pos, &idx) in order.iter().enumerate() {
        assignment[idx] = if pos < train_end {
            Partition::Train
        } else if pos < valid_end {
            Partition::Valid
        } else {
            Partition::Test
        };
    }
    Ok(SplitPlan {
        mode: SplitMode::Random,
        seed,
        fractions,
        assignment,
        scaffold_keys: keys,
    })
}

/// CSV rendering: `smiles,scaffold_key,partition` with a commented header
/// describing the split configuration.
pub fn split_plan_csv<S: AsRef<str>>(plan: &SplitPlan, mols: &[S]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# mode={} seed={} fractions={},{},{} overflow=least-filled-first(train,valid,test)\n",
        match plan.mode {
            SplitMode::Random => "random",
            SplitMode::Scaffold => "scaffold",
        },
        plan.seed,
        plan.fractions.0,
        plan.fractions.1,
        plan.fractions.2
    ));
    out.push_str("smiles,scaffold_key,partition\n");
    for (idx, mol) in mols.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            mol.as_ref(),
            plan.scaffold_keys[idx].as_str(),
            plan.assignment[idx].as_str()
        ));
    }
    out
}
