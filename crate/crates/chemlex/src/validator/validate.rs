//! Full and partial SMILES validation.

use super::{ErrorCategory, SmilesError, ValidationOutcome};
use crate::graph::parse_smiles;

/// Validation mode.
///
/// `Full` requires a complete, closed, kekulizable molecule. `Partial`
/// accepts any prefix that some suffix could extend to a valid string and
/// rejects only locally impossible constructs: malformed tokens, structure
/// violations, and valence overflow. Anything partial mode rejects stays
/// rejected for every possible continuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    Partial,
}

/// Validate one SMILES string, reporting at most one categorized error
/// (first failure wins). Scanning order: lexical and structural checks
/// left to right, end-of-string closure checks (rings, then branches,
/// then brackets), valence, and kekulization last.
pub fn validate(text: &str, mode: Mode) -> ValidationOutcome {
    use crate::graph::parser::{scan, ScanResult};
    match scan(text, mode) {
        Err(err) => ValidationOutcome::rejected(err),
        Ok(ScanResult::Prefix) => ValidationOutcome::valid(),
        Ok(ScanResult::Complete(parsed)) => {
            match crate::graph::kekulize_check(&parsed.graph) {
                Ok(()) => ValidationOutcome::valid(),
                Err(atom) => ValidationOutcome::rejected(
                    SmilesError::new(
                        ErrorCategory::CannotKekulize,
                        parsed.atom_spans[atom].0,
                    )
                    .with_detail(format!("no double-bond partner for atom {atom}")),
                ),
            }
        }
    }
}

/// Convenience wrapper matching the parser contract exactly: full-mode
/// validity coincides with `parse_smiles` + kekulization succeeding.
pub fn is_valid_molecule(text: &str) -> bool {
    parse_smiles(text)
        .map(|g| crate::graph::kekulize_check(&g).is_ok())
        .unwrap_or(false)
}
