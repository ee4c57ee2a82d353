use std::fmt;

use serde::{Deserialize, Serialize};

use crate::permcalc::Perm;

/// A Fox 3-coloring label: one of the three transpositions of Σ₃.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    /// `(1 2)`
    R,
    /// `(2 3)`
    Y,
    /// `(1 3)`
    B,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::R, Color::Y, Color::B];

    pub fn transposition(self) -> Perm {
        let (a, b) = match self {
            Color::R => (1, 2),
            Color::Y => (2, 3),
            Color::B => (1, 3),
        };
        Perm::from_cycles(3, &[&[a, b]]).expect("transposition of Σ₃")
    }

    pub fn from_transposition(p: &Perm) -> Option<Color> {
        Color::ALL.into_iter().find(|c| c.transposition() == *p)
    }

    /// The color `o·u·o` of the understrand after passing under `over`.
    pub fn conj(over: Color, under: Color) -> Color {
        if over == under {
            over
        } else {
            over.third(under)
        }
    }

    /// The color distinct from both `self` and `other` (which must differ).
    pub fn third(self, other: Color) -> Color {
        debug_assert_ne!(self, other);
        Color::ALL
            .into_iter()
            .find(|&c| c != self && c != other)
            .expect("three colors")
    }

    pub fn as_char(self) -> char {
        match self {
            Color::R => 'R',
            Color::Y => 'Y',
            Color::B => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'R' => Some(Color::R),
            'Y' => Some(Color::Y),
            'B' => Some(Color::B),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// `RYB`-style rendering of a color sequence.
pub fn color_string(colors: &[Color]) -> String {
    colors.iter().map(|c| c.as_char()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conj_matches_permutation_arithmetic() {
        for o in Color::ALL {
            for u in Color::ALL {
                let (po, pu) = (o.transposition(), u.transposition());
                let product = po.then(&pu).then(&po);
                assert_eq!(Color::from_transposition(&product), Some(Color::conj(o, u)));
            }
        }
        assert_eq!(Color::conj(Color::R, Color::Y), Color::B);
        assert_eq!(Color::conj(Color::R, Color::R), Color::R);
    }

    #[test]
    fn colors_are_the_transpositions() {
        let mut seen: Vec<Perm> = Color::ALL.iter().map(|c| c.transposition()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 3);
        assert!(seen.iter().all(|p| p.cycle_type() == vec![1, 2]));
    }
}
