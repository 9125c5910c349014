//! Periodic-table symbol matching for SMILES atom tokens.

/// All recognized element symbols, plus `*` for the wildcard atom.
pub const ELEMENTS: [&str; 119] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl",
    "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
    "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu",
    "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt",
    "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U", "Np",
    "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
    "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og", "*",
];

/// Elements writable without brackets, excluding the two-letter halogens.
pub const ORGANIC_SINGLE: [char; 8] = ['B', 'C', 'N', 'O', 'P', 'S', 'F', 'I'];

/// Lowercase aromatic symbols writable without brackets.
pub const AROMATIC_SINGLE: [char; 6] = ['b', 'c', 'n', 'o', 'p', 's'];

/// Elements allowed to carry the aromatic flag.
pub const AROMATIC_ELIGIBLE: [&str; 8] = ["B", "C", "N", "O", "P", "S", "Se", "As"];

/// Look up the canonical static symbol, `None` for unknown elements.
pub fn lookup(symbol: &str) -> Option<&'static str> {
    ELEMENTS.iter().find(|e| **e == symbol).copied()
}

pub fn is_aromatic_eligible(symbol: &str) -> bool {
    AROMATIC_ELIGIBLE.contains(&symbol)
}

/// Match a bracket-atom element at the start of `rest`.
///
/// Returns `(canonical symbol, consumed chars, aromatic)`. Two-letter
/// candidates are `[A-Z][a-z]` pairs (so `[NH4+]` is nitrogen, not
/// nihonium) or the lowercase aromatic pairs `se`/`as`.
pub fn match_bracket_element(rest: &str) -> Option<(&'static str, usize, bool)> {
    let mut chars = rest.chars();
    let first = chars.next()?;
    let second = chars.next();

    if first.is_ascii_lowercase() {
        if let Some(s) = second {
            let two: String = [first, s].iter().collect();
            if two == "se" || two == "as" {
                let canonical = lookup(&capitalize(&two)).unwrap();
                return Some((canonical, 2, true));
            }
        }
        let one = first.to_string();
        if AROMATIC_SINGLE.contains(&first) {
            let canonical = lookup(&one.to_uppercase()).unwrap();
            return Some((canonical, 1, true));
        }
        return None;
    }

    if first == '*' {
        return Some(("*", 1, false));
    }

    if first.is_ascii_uppercase() {
        if let Some(s) = second {
            if s.is_ascii_lowercase() {
                let two: String = [first, s].iter().collect();
                if let Some(canonical) = lookup(&two) {
                    return Some((canonical, 2, false));
                }
            }
        }
        let one = first.to_string();
        if let Some(canonical) = lookup(&one) {
            return Some((canonical, 1, false));
        }
    }
    None
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}
