//! Allowed-valence lists per element and charge state.

/// Allowed valences for the checked main-group elements.
///
/// Neutral lists: B {3}, C {4}, N {3,5}, O {2}, P {3,5}, S {2,4,6},
/// halogens {1}. Charge shifts the lists by electron counting:
///
/// * group 13 (B): a negative charge adds a bonding pair (borate is
///   4-valent), a positive charge removes one;
/// * group 14 (C): either charge sign costs one bond (both carbocations
///   and carbanions are 3-valent);
/// * groups 15-17 (N, O, P, S, halogens): allowed valence moves with the
///   charge sign (ammonium 4, oxide anion 1, iodonium 2).
///
/// Elements outside the table are not valence-checked.
#[derive(Debug, Clone, Default)]
pub struct ValenceTable;

impl ValenceTable {
    pub fn new() -> Self {
        ValenceTable
    }

    /// Allowed total valences (bond order sum + hydrogens) for `element`
    /// at `charge`. `None` means the element is not valence-checked; an
    /// empty list means no valence is acceptable at that charge.
    pub fn allowed(&self, element: &str, charge: i8) -> Option<Vec<u8>> {
        let neutral: &[u8] = match element {
            "B" => &[3],
            "C" => &[4],
            "N" => &[3, 5],
            "O" => &[2],
            "P" => &[3, 5],
            "S" => &[2, 4, 6],
            "F" | "Cl" | "Br" | "I" => &[1],
            _ => return None,
        };
        let shift = |v: u8| -> Option<u8> {
            let shifted = match element {
                "B" => v as i16 - charge as i16,
                "C" => v as i16 - charge.unsigned_abs() as i16,
                _ => v as i16 + charge as i16,
            };
            (0..=8).contains(&shifted).then_some(shifted as u8)
        };
        Some(neutral.iter().filter_map(|&v| shift(v)).collect())
    }

    /// Largest allowed valence, used for the incremental overflow check.
    /// `None` when the element is not checked at all.
    pub fn max_allowed(&self, element: &str, charge: i8) -> Option<u8> {
        self.allowed(element, charge)
            .map(|vs| vs.into_iter().max().unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neutral_lists() {
        let t = ValenceTable::new();
        assert_eq!(t.allowed("C", 0), Some(vec![4]));
        assert_eq!(t.allowed("N", 0), Some(vec![3, 5]));
        assert_eq!(t.allowed("O", 0), Some(vec![2]));
        assert_eq!(t.allowed("S", 0), Some(vec![2, 4, 6]));
        assert_eq!(t.allowed("Cl", 0), Some(vec![1]));
        assert_eq!(t.allowed("Se", 0), None);
    }

    #[test]
    fn charge_shifts() {
        let t = ValenceTable::new();
        assert_eq!(t.allowed("N", 1), Some(vec![4, 6]));
        assert_eq!(t.allowed("N", -1), Some(vec![2, 4]));
        assert_eq!(t.allowed("O", -1), Some(vec![1]));
        assert_eq!(t.allowed("O", 1), Some(vec![3]));
        assert_eq!(t.allowed("B", -1), Some(vec![4]));
        assert_eq!(t.allowed("C", 1), Some(vec![3]));
        assert_eq!(t.allowed("C", -1), Some(vec![3]));
    }

    #[test]
    fn cationic_nitrogen_allows_ammonium() {
        let t = ValenceTable::new();
        assert!(t.allowed("N", 1).unwrap().contains(&4));
    }
}
