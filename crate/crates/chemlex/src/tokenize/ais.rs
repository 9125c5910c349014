//! Atom-in-SMILES tokenization.
//!
//! Every atom token of the input is replaced by an environment token
//! `[central;ring;neighbors]`: the central atom with its hydrogen count,
//! an `R`/`!R` ring-membership flag, and the sorted element symbols of its
//! heavy neighbors. Structural characters (ring digits, parentheses, bond
//! symbols, dots) stay as standalone tokens in their original positions.
//!
//! Chiral bracket atoms render their marker relative to the stored bond
//! order (see [`ParsedSmiles::chirality_swap`]): an atom written `[C@@H]`
//! that opens a ring can come out as `[C@H]`. Decoding applies the same
//! swap again, which restores the original marker.

use crate::graph::{parse_layout, MolecularGraph, ParsedSmiles};
use crate::validator::SmilesError;

use super::TokenizeError;

/// Tokenize into AIS environment tokens plus structural tokens.
pub fn ais_tokens(text: &str) -> Result<Vec<String>, SmilesError> {
    let parsed = parse_layout(text)?;
    Ok(tokens_from_parsed(text, &parsed))
}

fn tokens_from_parsed(text: &str, parsed: &ParsedSmiles) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut pos = 0usize;
    let mut atom = 0usize;
    while pos < chars.len() {
        if atom < parsed.atom_spans.len() && parsed.atom_spans[atom].0 == pos {
            tokens.push(atom_token(&parsed.graph, atom, parsed.chirality_swap[atom]));
            pos = parsed.atom_spans[atom].1;
            atom += 1;
        } else if chars[pos] == '%' {
            tokens.push(chars[pos..pos + 3].iter().collect());
            pos += 3;
        } else {
            tokens.push(chars[pos].to_string());
            pos += 1;
        }
    }
    tokens
}

/// The `[central;ring;neighbors]` token for one atom.
fn atom_token(g: &MolecularGraph, i: usize, swap: bool) -> String {
    let ring = if g.atoms[i].in_ring { "R" } else { "!R" };
    let mut neighbors: Vec<String> = g
        .neighbors(i)
        .iter()
        .map(|&(j, _)| {
            let a = &g.atoms[j];
            if a.aromatic {
                a.element.to_lowercase()
            } else {
                a.element.to_string()
            }
        })
        .collect();
    neighbors.sort();
    format!("[{};{};{}]", central_field(g, i, swap), ring, neighbors.concat())
}

/// Central atom rendering: bare symbol + hydrogen count for plain atoms,
/// the full bracket form for bracket atoms.
fn central_field(g: &MolecularGraph, i: usize, swap: bool) -> String {
    let atom = &g.atoms[i];
    let symbol = if atom.aromatic {
        atom.element.to_lowercase()
    } else {
        atom.element.to_string()
    };
    let h = g.hydrogen_count(i);
    let h_suffix = match h {
        0 => String::new(),
        1 => "H".to_string(),
        n => format!("H{n}"),
    };

    if atom.explicit_h.is_none() {
        return format!("{symbol}{h_suffix}");
    }

    let marker = if swap {
        atom.chirality.flipped().marker()
    } else {
        atom.chirality.marker()
    };
    let mut s = String::from("[");
    if let Some(iso) = atom.isotope {
        s.push_str(&iso.to_string());
    }
    s.push_str(&symbol);
    s.push_str(marker);
    s.push_str(&h_suffix);
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

/// Reassemble a SMILES string from AIS tokens.
pub fn ais_decode(tokens: &[String]) -> Result<String, TokenizeError> {
    // first pass: raw assembly with markers as rendered
    let mut raw = String::new();
    let mut centrals = Vec::new();
    for tok in tokens {
        match split_ais_token(tok) {
            Some(central) => {
                centrals.push(central.to_string());
                raw.push_str(&central_to_atom(central)?);
            }
            None => raw.push_str(tok),
        }
    }
    if centrals.is_empty() {
        return Ok(raw);
    }

    // the swap depends only on ring-digit layout, which the raw string
    // reproduces; applying it again restores the original markers
    let parsed = parse_layout(&raw).map_err(TokenizeError::Smiles)?;
    if parsed.chirality_swap.iter().all(|s| !s) {
        return Ok(raw);
    }
    let mut out = String::new();
    let mut atom = 0usize;
    for tok in tokens {
        match split_ais_token(tok) {
            Some(central) => {
                let text = if parsed.chirality_swap[atom] {
                    flip_markers(central)
                } else {
                    central.to_string()
                };
                out.push_str(&central_to_atom(&text)?);
                atom += 1;
            }
            None => out.push_str(tok),
        }
    }
    Ok(out)
}

/// The central field of an AIS token, or `None` for structural tokens.
fn split_ais_token(token: &str) -> Option<&str> {
    let inner = token.strip_prefix('[')?.strip_suffix(']')?;
    // the central field may itself contain brackets; split on the last
    // two semicolons
    let (rest, _neighbors) = inner.rsplit_once(';')?;
    let (central, _ring) = rest.rsplit_once(';')?;
    Some(central)
}

/// Map a central field back to its SMILES atom text.
fn central_to_atom(central: &str) -> Result<String, TokenizeError> {
    if central.starts_with('[') {
        return Ok(central.to_string());
    }
    // strip the hydrogen-count suffix from a plain atom
    let body = match central.find('H') {
        Some(idx) => {
            let (symbol, suffix) = central.split_at(idx);
            if suffix == "H" || suffix[1..].chars().all(|c| c.is_ascii_digit()) {
                symbol
            } else {
                central
            }
        }
        None => central,
    };
    let plain = matches!(
        body,
        "B" | "C" | "N" | "O" | "P" | "S" | "F" | "Cl" | "Br" | "I" | "b" | "c" | "n" | "o"
            | "p" | "s" | "*"
    );
    if !plain {
        return Err(TokenizeError::InvalidToken(central.to_string()));
    }
    Ok(body.to_string())
}

fn flip_markers(central: &str) -> String {
    if central.contains("@@") {
        central.replacen("@@", "@", 1)
    } else if central.contains('@') {
        central.replacen('@', "@@", 1)
    } else {
        central.to_string()
    }
}
