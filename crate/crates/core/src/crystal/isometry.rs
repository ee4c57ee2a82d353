use std::fmt;

use serde::{Deserialize, Serialize};

/// Diagonal linear parts of determinant one: the Klein four-group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Linear {
    I,
    /// `diag(1, −1, −1)`, the half-turn about an x-parallel line.
    X,
    /// `diag(−1, 1, −1)`
    Y,
    /// `diag(−1, −1, 1)`
    Z,
}

impl Linear {
    pub const ALL: [Linear; 4] = [Linear::I, Linear::X, Linear::Y, Linear::Z];

    pub fn signs(self) -> [i64; 3] {
        match self {
            Linear::I => [1, 1, 1],
            Linear::X => [1, -1, -1],
            Linear::Y => [-1, 1, -1],
            Linear::Z => [-1, -1, 1],
        }
    }

    pub fn from_signs(s: [i64; 3]) -> Linear {
        Linear::ALL
            .into_iter()
            .find(|l| l.signs() == s)
            .expect("diagonal sign matrices of determinant one")
    }

    pub fn compose(self, other: Linear) -> Linear {
        let (a, b) = (self.signs(), other.signs());
        Linear::from_signs([a[0] * b[0], a[1] * b[1], a[2] * b[2]])
    }

    /// The coordinate axis fixed by a half-turn.
    pub fn fixed_direction(self) -> Option<usize> {
        match self {
            Linear::I => None,
            Linear::X => Some(0),
            Linear::Y => Some(1),
            Linear::Z => Some(2),
        }
    }
}

/// `p ↦ L·p + t` with `L` diagonal and `t` integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Isometry {
    pub linear: Linear,
    pub translation: [i64; 3],
}

impl Isometry {
    pub fn new(linear: Linear, translation: [i64; 3]) -> Self {
        Isometry { linear, translation }
    }

    pub fn identity() -> Self {
        Isometry::new(Linear::I, [0; 3])
    }

    pub fn translation(v: [i64; 3]) -> Self {
        Isometry::new(Linear::I, v)
    }

    pub fn apply(&self, p: [i64; 3]) -> [i64; 3] {
        let s = self.linear.signs();
        [0, 1, 2].map(|i| s[i] * p[i] + self.translation[i])
    }

    /// First `self`, then `other`: `p ↦ other(self(p))`.
    pub fn then(&self, other: &Isometry) -> Isometry {
        let s = other.linear.signs();
        let t = [0, 1, 2].map(|i| s[i] * self.translation[i] + other.translation[i]);
        Isometry::new(self.linear.compose(other.linear), t)
    }

    pub fn inverse(&self) -> Isometry {
        let s = self.linear.signs();
        Isometry::new(self.linear, [0, 1, 2].map(|i| -s[i] * self.translation[i]))
    }

    /// `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &Isometry) -> Isometry {
        self.inverse().then(g).then(self)
    }

    pub fn is_identity(&self) -> bool {
        *self == Isometry::identity()
    }

    pub fn is_translation(&self) -> bool {
        self.linear == Linear::I
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y", "z"];
        let s = self.linear.signs();
        let parts: Vec<String> = (0..3)
            .map(|i| {
                let var = if s[i] < 0 { format!("-{}", names[i]) } else { names[i].to_string() };
                match self.translation[i] {
                    0 => var,
                    t if s[i] < 0 => format!("{t}-{}", names[i]),
                    t if t > 0 => format!("{var}+{t}"),
                    t => format!("{var}{t}"),
                }
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}
