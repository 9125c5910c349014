//! A chemical-language toolkit for SMILES corpora.
//!
//! The crate is organized around the stages of a chemical language modeling
//! pipeline that do not involve a neural network:
//!
//! * [`graph`] — SMILES parsing into molecular graphs, kekulization,
//!   canonical dedup keys, and corpus standardization.
//! * [`validator`] — full/partial SMILES validation with a fixed error
//!   taxonomy and corpus-level error profiles.
//! * [`tokenize`] — character-level, atom-environment (AIS), and
//!   byte-pair-encoding tokenizers over SMILES text.
//! * [`scaffold`] — Bemis-Murcko scaffold extraction, scaffold-grouped
//!   dataset splits, and Zipf rank-frequency fitting.
//! * [`genmetrics`] — validity/uniqueness/novelty evaluation of generated
//!   corpora against a reference set.
//! * [`evalharness`] — cross-validation planning and the classification
//!   statistics (MCC, AUC-ROC, Welch's t-test) used to compare runs.
//! * [`synth`] — seeded generation of synthetic, valid-by-construction
//!   SMILES corpora for tests and benchmarks.

pub mod evalharness;
pub mod genmetrics;
pub mod graph;
pub mod scaffold;
pub mod seed;
pub mod synth;
pub mod tokenize;
pub mod validator;

pub use graph::{Atom, Bond, BondOrder, CanonicalKey, Chirality, MolecularGraph};
pub use tokenize::{Scheme, TokenSequence, Vocabulary};
pub use validator::{ErrorCategory, ErrorKind, ValidationOutcome};
