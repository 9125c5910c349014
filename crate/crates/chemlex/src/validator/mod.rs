//! SMILES validation with a fixed error taxonomy.
//!
//! Every rejected string maps to exactly one of 21 categories. Six of the
//! syntax categories describe long-range failures (something opened and
//! never closed, or closed without being opened): these are the errors a
//! sequence model makes when it loses track of distant context.

mod profile;
mod valence;
mod validate;

pub use profile::{error_profile, CategoryStat, ErrorProfile, KindShares};
pub use valence::ValenceTable;
pub use validate::{is_valid_molecule, validate, Mode};

use serde::{Deserialize, Serialize};

/// Coarse error family: which stage of checking rejected the string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Syntax,
    Valence,
    Kekulization,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Syntax => "syntax",
            ErrorKind::Valence => "valence",
            ErrorKind::Kekulization => "kekulization",
        }
    }
}

/// One of the 21 recognized failure categories.
///
/// The variants are listed in registry order, which is also the
/// presentation order used by [`ErrorProfile`] renderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ErrorCategory {
    RingOpeningsNotClosed,
    UnmatchedCloseParenthesis,
    CannotKekulize,
    BranchesNotClosed,
    UncommonValence,
    SecondBondSameAtoms,
    IllegalCharacter,
    RingClosureMustFollowAtom,
    MissingCloseBracket,
    FinalBranchInParens,
    AtomBeforeOpenParen,
    BondOpenCloseSameAtom,
    SingleBondSymbolOnly,
    RingClosureInParens,
    AtomBeforeBondSymbol,
    EmptyBranch,
    BondBeforeOpenParen,
    AtomAfterBondSymbol,
    ElementSymbolRequired,
    AtomBeforeBondClosure,
    OpenSquareBracket,
}

impl ErrorCategory {
    /// All categories in registry order.
    pub const ALL: [ErrorCategory; 21] = [
        ErrorCategory::RingOpeningsNotClosed,
        ErrorCategory::UnmatchedCloseParenthesis,
        ErrorCategory::CannotKekulize,
        ErrorCategory::BranchesNotClosed,
        ErrorCategory::UncommonValence,
        ErrorCategory::SecondBondSameAtoms,
        ErrorCategory::IllegalCharacter,
        ErrorCategory::RingClosureMustFollowAtom,
        ErrorCategory::MissingCloseBracket,
        ErrorCategory::FinalBranchInParens,
        ErrorCategory::AtomBeforeOpenParen,
        ErrorCategory::BondOpenCloseSameAtom,
        ErrorCategory::SingleBondSymbolOnly,
        ErrorCategory::RingClosureInParens,
        ErrorCategory::AtomBeforeBondSymbol,
        ErrorCategory::EmptyBranch,
        ErrorCategory::BondBeforeOpenParen,
        ErrorCategory::AtomAfterBondSymbol,
        ErrorCategory::ElementSymbolRequired,
        ErrorCategory::AtomBeforeBondClosure,
        ErrorCategory::OpenSquareBracket,
    ];

    pub fn kind(self) -> ErrorKind {
        match self {
            ErrorCategory::CannotKekulize => ErrorKind::Kekulization,
            ErrorCategory::UncommonValence => ErrorKind::Valence,
            _ => ErrorKind::Syntax,
        }
    }

    /// The fixed message wording. Parameterized messages keep a literal
    /// `N` here; [`SmilesError::message`] substitutes the actual count.
    pub fn message_template(self) -> &'static str {
        match self {
            ErrorCategory::RingOpeningsNotClosed => "N ring openings have not been closed",
            ErrorCategory::UnmatchedCloseParenthesis => "Unmatched close parenthesis",
            ErrorCategory::CannotKekulize => "Aromatic system cannot be kekulized",
            ErrorCategory::BranchesNotClosed => "N branches have not been closed",
            ErrorCategory::UncommonValence => "Uncommon valence or charge state",
            ErrorCategory::SecondBondSameAtoms => {
                "Cannot have a second bond between the same atoms"
            }
            ErrorCategory::IllegalCharacter => "Illegal character",
            ErrorCategory::RingClosureMustFollowAtom => {
                "Ring closure symbols must immediately follow an atom"
            }
            ErrorCategory::MissingCloseBracket => "Missing the close bracket",
            ErrorCategory::FinalBranchInParens => {
                "The final branch should not be within parentheses"
            }
            ErrorCategory::AtomBeforeOpenParen => "An atom must precede an open parenthesis",
            ErrorCategory::BondOpenCloseSameAtom => {
                "Cannot have a bond opening and closing on the same atom"
            }
            ErrorCategory::SingleBondSymbolOnly => "Only a single bond symbol should be used",
            ErrorCategory::RingClosureInParens => {
                "Ring closure symbols should not be in parentheses"
            }
            ErrorCategory::AtomBeforeBondSymbol => "An atom must precede a bond symbol",
            ErrorCategory::EmptyBranch => "Empty branches are not allowed",
            ErrorCategory::BondBeforeOpenParen => {
                "A bond symbol should not precede an open parenthesis"
            }
            ErrorCategory::AtomAfterBondSymbol => "An atom must follow a bond symbol",
            ErrorCategory::ElementSymbolRequired => "An element symbol is required",
            ErrorCategory::AtomBeforeBondClosure => "An atom must precede a bond closure symbol",
            ErrorCategory::OpenSquareBracket => {
                "An open square brackets is present without the corresponding close square brackets"
            }
        }
    }

    /// Whether this category signals a long-range dependency failure.
    ///
    /// Exactly six syntax categories qualify: unclosed rings, unmatched
    /// close parenthesis, unclosed branches, both bracket categories, and
    /// a final branch left inside parentheses.
    pub fn long_range(self) -> bool {
        matches!(
            self,
            ErrorCategory::RingOpeningsNotClosed
                | ErrorCategory::UnmatchedCloseParenthesis
                | ErrorCategory::BranchesNotClosed
                | ErrorCategory::MissingCloseBracket
                | ErrorCategory::FinalBranchInParens
                | ErrorCategory::OpenSquareBracket
        )
    }
}

/// True iff the category is one of the six long-range syntax categories.
pub fn classify_long_range(category: ErrorCategory) -> bool {
    category.long_range()
}

/// A categorized rejection: the first failure found while scanning a string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}: {} (at position {position})", self.category.kind().as_str(), self.message())]
pub struct SmilesError {
    pub category: ErrorCategory,
    /// Character offset of the offending token (or of end-of-string).
    pub position: usize,
    /// Count substituted for `N` in parameterized messages.
    pub count: Option<usize>,
    /// Free-form context, e.g. the offending atom or character.
    pub detail: String,
}

impl SmilesError {
    pub fn new(category: ErrorCategory, position: usize) -> Self {
        SmilesError {
            category,
            position,
            count: None,
            detail: String::new(),
        }
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = Some(count);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// The category message with `N` rendered as the actual count.
    pub fn message(&self) -> String {
        let template = self.category.message_template();
        match self.count {
            Some(n) if template.starts_with("N ") => {
                format!("{} {}", n, &template[2..])
            }
            _ => template.to_string(),
        }
    }
}

/// Per-string verdict: valid, or exactly one categorized error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationOutcome {
    pub error: Option<SmilesError>,
}

impl ValidationOutcome {
    pub fn valid() -> Self {
        ValidationOutcome { error: None }
    }

    pub fn rejected(error: SmilesError) -> Self {
        ValidationOutcome { error: Some(error) }
    }

    pub fn is_valid(&self) -> bool {
        self.error.is_none()
    }
}
