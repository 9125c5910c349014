//! SMILES scanner: one pass that serves both the parser and the validator.
//!
//! The scanner rejects a string with the first categorized error it finds.
//! In partial mode only locally impossible constructs are rejected; checks
//! that a longer string could still satisfy (unclosed rings, branches,
//! brackets, exact valence, kekulization) are deferred to full mode.

use std::collections::BTreeMap;

use super::elements;
use super::{Atom, Bond, BondOrder, Chirality, MolecularGraph};
use crate::validator::{ErrorCategory, Mode, SmilesError, ValenceTable};

/// A parsed graph plus the token layout needed to rebuild atom-aligned
/// views of the source text (used by the AIS tokenizer).
#[derive(Debug, Clone)]
pub struct ParsedSmiles {
    pub graph: MolecularGraph,
    /// Char range `[start, end)` of each atom token in the source.
    pub atom_spans: Vec<(usize, usize)>,
    /// Per atom: whether rendering its chirality marker relative to the
    /// written neighbor layout requires swapping `@` and `@@`.
    ///
    /// The marker in a SMILES string is relative to the order in which
    /// the atom's neighbors are *written*; a ring-closure digit claims its
    /// place at the digit, but the bond itself only exists once the
    /// partner atom appears. When those two orders differ by an odd
    /// permutation, a renderer that walks stored bonds must swap the
    /// marker to present the same arrangement.
    pub chirality_swap: Vec<bool>,
}

/// Parse a SMILES string into a molecular graph.
///
/// Atom order follows the left-to-right order of atom tokens. Malformed
/// input is rejected with a single categorized error; valences are
/// enforced against [`ValenceTable`]. Kekulizability is not checked here.
pub fn parse_smiles(text: &str) -> Result<MolecularGraph, SmilesError> {
    parse_layout(text).map(|p| p.graph)
}

/// Parse, keeping the token layout.
pub fn parse_layout(text: &str) -> Result<ParsedSmiles, SmilesError> {
    match scan(text, Mode::Full)? {
        ScanResult::Complete(parsed) => Ok(*parsed),
        ScanResult::Prefix => unreachable!("full scan always completes"),
    }
}

pub(crate) enum ScanResult {
    Complete(Box<ParsedSmiles>),
    /// Partial mode: the text is an extensible prefix.
    Prefix,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum LastSig {
    Start,
    Atom,
    RingDigit,
    Open,
    Close(usize),
    Bond,
    Dot,
}

struct RingOpen {
    atom: usize,
    order: Option<BondOrder>,
    pos: usize,
    serial: i64,
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    mode: Mode,
    atoms: Vec<Atom>,
    bonds: Vec<Bond>,
    atom_spans: Vec<(usize, usize)>,
    order_sum: Vec<u8>,
    /// Per atom, incident bond ids in written order; ring openings hold
    /// `-(serial + 1)` until their closing digit arrives.
    written: Vec<Vec<i64>>,
    attach: Option<usize>,
    pending_bond: Option<(BondOrder, usize)>,
    branch_stack: Vec<(usize, usize)>,
    open_rings: BTreeMap<u16, RingOpen>,
    ring_serial: i64,
    last_sig: LastSig,
    open_bracket: Option<usize>,
    valence: ValenceTable,
}

enum BracketOutcome {
    Atom(Atom),
    Incomplete,
}

pub(crate) fn scan(text: &str, mode: Mode) -> Result<ScanResult, SmilesError> {
    let scanner = Scanner {
        chars: text.chars().collect(),
        pos: 0,
        mode,
        atoms: Vec::new(),
        bonds: Vec::new(),
        atom_spans: Vec::new(),
        order_sum: Vec::new(),
        written: Vec::new(),
        attach: None,
        pending_bond: None,
        branch_stack: Vec::new(),
        open_rings: BTreeMap::new(),
        ring_serial: 0,
        last_sig: LastSig::Start,
        open_bracket: None,
        valence: ValenceTable::new(),
    };
    scanner.run(text)
}

impl Scanner {
    fn run(mut self, text: &str) -> Result<ScanResult, SmilesError> {
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            match c {
                '[' => {
                    let start = self.pos;
                    match self.parse_bracket()? {
                        BracketOutcome::Atom(atom) => {
                            let span = (start, self.pos);
                            self.push_atom(atom, span)?;
                        }
                        BracketOutcome::Incomplete => {
                            self.open_bracket = Some(start);
                            break;
                        }
                    }
                }
                'A'..='Z' | 'b' | 'c' | 'n' | 'o' | 'p' | 's' | '*' => {
                    let atom = self.parse_plain_atom()?;
                    let len = if atom.element.len() == 2 { 2 } else { 1 };
                    let span = (self.pos, self.pos + len);
                    self.pos += len;
                    self.push_atom(atom, span)?;
                }
                '-' | '=' | '#' | ':' | '/' | '\\' => {
                    if self.attach.is_none() {
                        return Err(self.err(ErrorCategory::AtomBeforeBondSymbol, self.pos));
                    }
                    if self.pending_bond.is_some() {
                        return Err(self.err(ErrorCategory::SingleBondSymbolOnly, self.pos));
                    }
                    let order = match c {
                        '=' => BondOrder::Double,
                        '#' => BondOrder::Triple,
                        ':' => BondOrder::Aromatic,
                        // cis/trans markers are kept as plain single bonds
                        _ => BondOrder::Single,
                    };
                    self.pending_bond = Some((order, self.pos));
                    self.last_sig = LastSig::Bond;
                    self.pos += 1;
                }
                '0'..='9' | '%' => {
                    self.handle_ring_digit()?;
                }
                '(' => {
                    let Some(attach) = self.attach else {
                        return Err(self.err(ErrorCategory::AtomBeforeOpenParen, self.pos));
                    };
                    if self.pending_bond.is_some() {
                        return Err(self.err(ErrorCategory::BondBeforeOpenParen, self.pos));
                    }
                    self.branch_stack.push((attach, self.pos));
                    self.last_sig = LastSig::Open;
                    self.pos += 1;
                }
                ')' => {
                    if self.branch_stack.is_empty() {
                        return Err(self.err(ErrorCategory::UnmatchedCloseParenthesis, self.pos));
                    }
                    if self.last_sig == LastSig::Open {
                        return Err(self.err(ErrorCategory::EmptyBranch, self.pos));
                    }
                    if let Some((_, bpos)) = self.pending_bond {
                        return Err(self.err(ErrorCategory::AtomAfterBondSymbol, bpos));
                    }
                    let (attach, _) = self.branch_stack.pop().unwrap();
                    self.attach = Some(attach);
                    self.last_sig = LastSig::Close(self.pos);
                    self.pos += 1;
                }
                '.' => {
                    if let Some((_, bpos)) = self.pending_bond {
                        return Err(self.err(ErrorCategory::AtomAfterBondSymbol, bpos));
                    }
                    self.attach = None;
                    self.last_sig = LastSig::Dot;
                    self.pos += 1;
                }
                other => {
                    return Err(self
                        .err(ErrorCategory::IllegalCharacter, self.pos)
                        .with_detail(format!("unexpected character `{other}`")));
                }
            }
        }

        if self.mode == Mode::Partial {
            return Ok(ScanResult::Prefix);
        }
        self.finish(text)
    }

    /// End-of-string checks, ordered: rings, branches, brackets, final
    /// branch, pending bond, then exact valence. Kekulization is left to
    /// the validator.
    fn finish(self, text: &str) -> Result<ScanResult, SmilesError> {
        if !self.open_rings.is_empty() {
            let first = self.open_rings.values().min_by_key(|r| r.serial).unwrap();
            let digits: Vec<String> = self.open_rings.keys().map(|d| d.to_string()).collect();
            return Err(SmilesError::new(
                ErrorCategory::RingOpeningsNotClosed,
                first.pos,
            )
            .with_count(self.open_rings.len())
            .with_detail(format!("open ring bond(s): {}", digits.join(", "))));
        }
        if !self.branch_stack.is_empty() {
            let (_, pos) = self.branch_stack[0];
            return Err(
                SmilesError::new(ErrorCategory::BranchesNotClosed, pos)
                    .with_count(self.branch_stack.len()),
            );
        }
        if let Some(pos) = self.open_bracket {
            return Err(SmilesError::new(ErrorCategory::OpenSquareBracket, pos));
        }
        if let LastSig::Close(pos) = self.last_sig {
            return Err(SmilesError::new(ErrorCategory::FinalBranchInParens, pos));
        }
        if let Some((_, pos)) = self.pending_bond {
            return Err(SmilesError::new(ErrorCategory::AtomAfterBondSymbol, pos));
        }
        if self.atoms.is_empty() {
            return Err(SmilesError::new(ErrorCategory::ElementSymbolRequired, 0)
                .with_detail("no atoms in input"));
        }

        let chirality_swap = self
            .written
            .iter()
            .map(|w| {
                let mut inversions = 0usize;
                for i in 0..w.len() {
                    for j in i + 1..w.len() {
                        if w[i] > w[j] {
                            inversions += 1;
                        }
                    }
                }
                inversions % 2 == 1
            })
            .collect();

        let graph = MolecularGraph::new(self.atoms, self.bonds, text.to_string());

        // Exact valence: bracket atoms must land on an allowed valence,
        // plain atoms must stay reachable by implicit-hydrogen fill.
        for i in 0..graph.atoms.len() {
            let atom = &graph.atoms[i];
            let Some(allowed) = self.valence.allowed(atom.element, atom.formal_charge) else {
                continue;
            };
            let effective = graph.bond_order_sum(i) + u8::from(graph.needs_ring_double(i));
            let ok = match atom.explicit_h {
                Some(h) => allowed.contains(&(effective + h)),
                None => allowed.iter().any(|v| *v >= effective),
            };
            if !ok {
                let pos = self.atom_spans[i].0;
                return Err(SmilesError::new(ErrorCategory::UncommonValence, pos)
                    .with_detail(format!(
                        "atom {} `{}{}` has valence {}",
                        i,
                        atom.element,
                        if atom.formal_charge != 0 {
                            format!("{:+}", atom.formal_charge)
                        } else {
                            String::new()
                        },
                        effective + atom.explicit_h.unwrap_or(0),
                    )));
            }
        }

        Ok(ScanResult::Complete(Box::new(ParsedSmiles {
            graph,
            atom_spans: self.atom_spans,
            chirality_swap,
        })))
    }

    fn err(&self, category: ErrorCategory, pos: usize) -> SmilesError {
        SmilesError::new(category, pos)
    }

    fn parse_plain_atom(&mut self) -> Result<Atom, SmilesError> {
        let c = self.chars[self.pos];
        let next = self.chars.get(self.pos + 1).copied();
        if c == '*' {
            return Ok(Atom::new("*", false));
        }
        if c == 'C' && next == Some('l') {
            return Ok(Atom::new("Cl", false));
        }
        if c == 'B' && next == Some('r') {
            return Ok(Atom::new("Br", false));
        }
        if elements::ORGANIC_SINGLE.contains(&c) {
            return Ok(Atom::new(elements::lookup(&c.to_string()).unwrap(), false));
        }
        if elements::AROMATIC_SINGLE.contains(&c) {
            let symbol = elements::lookup(&c.to_uppercase().to_string()).unwrap();
            return Ok(Atom::new(symbol, true));
        }
        Err(self
            .err(ErrorCategory::IllegalCharacter, self.pos)
            .with_detail(format!("`{c}` is not an organic-subset atom")))
    }

    /// Parse a bracket atom starting at `[`. Field order is fixed:
    /// isotope, element, chirality, hydrogen count, charge, atom map.
    fn parse_bracket(&mut self) -> Result<BracketOutcome, SmilesError> {
        let open_pos = self.pos;
        self.pos += 1; // consume '['

        macro_rules! peek {
            () => {
                match self.chars.get(self.pos) {
                    Some(c) => *c,
                    None => return Ok(BracketOutcome::Incomplete),
                }
            };
        }

        // isotope
        let mut isotope: Option<u16> = None;
        while peek!().is_ascii_digit() {
            let d = self.chars[self.pos].to_digit(10).unwrap() as u16;
            isotope = Some(isotope.unwrap_or(0).saturating_mul(10).saturating_add(d));
            self.pos += 1;
        }
        // a zero isotope marker is meaningless; drop it
        if isotope == Some(0) {
            isotope = None;
        }

        // element
        let rest: String = self.chars[self.pos..].iter().collect();
        let c = peek!();
        let Some((symbol, consumed, aromatic)) = elements::match_bracket_element(&rest) else {
            return Err(self
                .err(ErrorCategory::ElementSymbolRequired, self.pos)
                .with_detail(format!("`{c}` does not start an element symbol")));
        };
        self.pos += consumed;
        let mut atom = Atom::new(symbol, aromatic);
        atom.isotope = isotope;
        atom.explicit_h = Some(0);

        // chirality
        if peek!() == '@' {
            self.pos += 1;
            if peek!() == '@' {
                self.pos += 1;
                atom.chirality = Chirality::Clockwise;
            } else {
                atom.chirality = Chirality::CounterClockwise;
            }
        }

        // hydrogen count
        if peek!() == 'H' {
            self.pos += 1;
            let mut count: u8 = 1;
            if peek!().is_ascii_digit() {
                count = 0;
                while peek!().is_ascii_digit() {
                    let d = self.chars[self.pos].to_digit(10).unwrap() as u8;
                    count = count.saturating_mul(10).saturating_add(d);
                    self.pos += 1;
                }
            }
            atom.explicit_h = Some(count);
        }

        // charge
        let sign = match peek!() {
            '+' => 1i8,
            '-' => -1i8,
            _ => 0,
        };
        if sign != 0 {
            let sign_char = self.chars[self.pos];
            self.pos += 1;
            let mut magnitude: i8 = 1;
            if peek!().is_ascii_digit() {
                magnitude = 0;
                while peek!().is_ascii_digit() {
                    let d = self.chars[self.pos].to_digit(10).unwrap() as i8;
                    magnitude = magnitude.saturating_mul(10).saturating_add(d);
                    self.pos += 1;
                }
            } else {
                while peek!() == sign_char {
                    magnitude = magnitude.saturating_add(1);
                    self.pos += 1;
                }
            }
            atom.formal_charge = sign * magnitude;
        }

        // atom map (accepted, not retained)
        if peek!() == ':' {
            self.pos += 1;
            if !peek!().is_ascii_digit() {
                return Err(self
                    .err(ErrorCategory::MissingCloseBracket, self.pos)
                    .with_detail("atom map expects digits after `:`"));
            }
            while peek!().is_ascii_digit() {
                self.pos += 1;
            }
        }

        let close = peek!();
        if close != ']' {
            return Err(self
                .err(ErrorCategory::MissingCloseBracket, self.pos)
                .with_detail(format!(
                    "unexpected `{close}` in bracket atom opened at {open_pos}"
                )));
        }
        self.pos += 1;
        Ok(BracketOutcome::Atom(atom))
    }

    fn push_atom(&mut self, atom: Atom, span: (usize, usize)) -> Result<(), SmilesError> {
        let idx = self.atoms.len();
        self.atoms.push(atom);
        self.atom_spans.push(span);
        self.order_sum.push(0);
        self.written.push(Vec::new());

        if let Some(prev) = self.attach {
            let order = match self.pending_bond.take() {
                Some((order, _)) => order,
                None => {
                    if self.atoms[prev].aromatic && self.atoms[idx].aromatic {
                        BondOrder::Aromatic
                    } else {
                        BondOrder::Single
                    }
                }
            };
            let bond = self.add_bond(prev, idx, order, span.0)?;
            self.written[prev].push(bond as i64);
            self.written[idx].push(bond as i64);
        }
        self.attach = Some(idx);
        self.last_sig = LastSig::Atom;
        Ok(())
    }

    fn handle_ring_digit(&mut self) -> Result<(), SmilesError> {
        let pos = self.pos;
        match self.last_sig {
            LastSig::Start | LastSig::Dot => {
                return Err(self.err(ErrorCategory::AtomBeforeBondClosure, pos));
            }
            LastSig::Open => {
                return Err(self.err(ErrorCategory::RingClosureInParens, pos));
            }
            LastSig::Close(_) => {
                return Err(self.err(ErrorCategory::RingClosureMustFollowAtom, pos));
            }
            LastSig::Atom | LastSig::RingDigit | LastSig::Bond => {}
        }

        let digit: u16 = if self.chars[self.pos] == '%' {
            let d1 = self.chars.get(self.pos + 1).copied();
            let d2 = self.chars.get(self.pos + 2).copied();
            match (d1, d2) {
                (Some(a), Some(b)) if a.is_ascii_digit() && b.is_ascii_digit() => {
                    self.pos += 3;
                    (a.to_digit(10).unwrap() * 10 + b.to_digit(10).unwrap()) as u16
                }
                (Some(a), _) if !a.is_ascii_digit() => {
                    return Err(self
                        .err(ErrorCategory::IllegalCharacter, self.pos + 1)
                        .with_detail("`%` ring closures need two digits"));
                }
                _ => {
                    // string ends inside a %nn token
                    if self.mode == Mode::Partial {
                        self.pos = self.chars.len();
                        return Ok(());
                    }
                    return Err(self
                        .err(ErrorCategory::IllegalCharacter, self.pos)
                        .with_detail("`%` ring closures need two digits"));
                }
            }
        } else {
            let d = self.chars[self.pos].to_digit(10).unwrap() as u16;
            self.pos += 1;
            d
        };

        let atom = self.attach.expect("ring digit context guarantees an atom");
        let pending = self.pending_bond.take().map(|(order, _)| order);

        if let Some(open) = self.open_rings.remove(&digit) {
            if open.atom == atom {
                return Err(self.err(ErrorCategory::BondOpenCloseSameAtom, pos));
            }
            if self.bond_exists(open.atom, atom) {
                return Err(self.err(ErrorCategory::SecondBondSameAtoms, pos));
            }
            let order = match (open.order, pending) {
                (Some(a), Some(b)) if a != b => {
                    return Err(self.err(ErrorCategory::SingleBondSymbolOnly, pos));
                }
                (Some(a), _) => a,
                (None, Some(b)) => b,
                (None, None) => {
                    if self.atoms[open.atom].aromatic && self.atoms[atom].aromatic {
                        BondOrder::Aromatic
                    } else {
                        BondOrder::Single
                    }
                }
            };
            let bond = self.add_bond(open.atom, atom, order, pos)? as i64;
            self.written[atom].push(bond);
            let placeholder = -(open.serial + 1);
            for slot in self.written[open.atom].iter_mut() {
                if *slot == placeholder {
                    *slot = bond;
                    break;
                }
            }
        } else {
            let serial = self.ring_serial;
            self.ring_serial += 1;
            self.written[atom].push(-(serial + 1));
            self.open_rings.insert(
                digit,
                RingOpen {
                    atom,
                    order: pending,
                    pos,
                    serial,
                },
            );
        }
        self.last_sig = LastSig::RingDigit;
        Ok(())
    }

    fn bond_exists(&self, a: usize, b: usize) -> bool {
        self.bonds
            .iter()
            .any(|bond| (bond.a == a && bond.b == b) || (bond.a == b && bond.b == a))
    }

    fn add_bond(
        &mut self,
        a: usize,
        b: usize,
        order: BondOrder,
        err_pos: usize,
    ) -> Result<usize, SmilesError> {
        let idx = self.bonds.len();
        self.bonds.push(Bond {
            a,
            b,
            order,
            ring_bond: false,
        });
        self.order_sum[a] += order.valence_units();
        self.order_sum[b] += order.valence_units();
        for i in [a, b] {
            self.check_overflow(i, err_pos)?;
        }
        Ok(idx)
    }

    /// Incremental overflow check: bonds only accumulate, so exceeding the
    /// maximum allowed valence can never be repaired by a longer string.
    fn check_overflow(&self, i: usize, _err_pos: usize) -> Result<(), SmilesError> {
        let atom = &self.atoms[i];
        let Some(max) = self.valence.max_allowed(atom.element, atom.formal_charge) else {
            return Ok(());
        };
        let total = self.order_sum[i] + atom.explicit_h.unwrap_or(0);
        if total > max {
            return Err(
                SmilesError::new(ErrorCategory::UncommonValence, self.atom_spans[i].0)
                    .with_detail(format!(
                        "atom {} `{}` exceeds maximum valence {} with {} connections",
                        i, atom.element, max, total
                    )),
            );
        }
        Ok(())
    }
}
