use std::fmt;

use serde::{Deserialize, Serialize};

use super::PermError;

/// A permutation of `{1, ..., k}`.
///
/// Stored 0-based; every public constructor and the cycle notation are
/// 1-based. Products are read left to right: `a.then(&b)` sends `x` to
/// `b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i - 1] = σ(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree || seen[img - 1] {
                return Err(PermError::NotBijective(images.to_vec()));
            }
            seen[img - 1] = true;
            out.push(img - 1);
        }
        Ok(Perm { images: out })
    }

    /// Builds a permutation of the given degree from disjoint 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &point) in cycle.iter().enumerate() {
                if point == 0 || point > degree {
                    return Err(PermError::PointOutOfRange { point, degree });
                }
                if touched[point - 1] {
                    return Err(PermError::OverlappingCycles);
                }
                touched[point - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(PermError::PointOutOfRange { point: next, degree });
                }
                images[point - 1] = next - 1;
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `(1 2)(3 4)` or `()`; commas are accepted
    /// as separators as well.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')'))
                .ok_or_else(|| PermError::Syntax(text.to_string()))?;
            let body = &rest[1..=body_end];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let point: usize = tok
                    .parse()
                    .map_err(|_| PermError::Syntax(text.to_string()))?;
                cycle.push(point);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[body_end + 2..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] + 1
    }

    /// 1-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// Left-to-right product: first `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        self.then(self).is_identity()
    }

    /// Disjoint cycles (1-based), each starting at its smallest point,
    /// including fixed points as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths in non-decreasing order; they sum to the degree.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i != j)
    }
}

/// The subgroup generated by `gens`, by closure. Intended for small groups.
pub fn generated_subgroup(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let mut elems = vec![Perm::identity(degree)];
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for g in gens {
                let p = e.then(g);
                if !elems.contains(&p) {
                    elems.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    elems.sort();
    elems
}

/// True when the group generated by `gens` acts transitively on `{1..degree}`.
pub fn is_transitive(degree: usize, gens: &[Perm]) -> bool {
    if degree == 0 {
        return true;
    }
    let mut reached = vec![false; degree];
    reached[0] = true;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.images[x];
            if !reached[y] {
                reached[y] = true;
                stack.push(y);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return f.write_str("()");
        }
        for cycle in nontrivial {
            let body: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_is_left_to_right() {
        let x = Perm::parse("(1 2)", 3).unwrap();
        let y = Perm::parse("(2 3)", 3).unwrap();
        // 1 -x-> 2 -y-> 3
        assert_eq!(x.then(&y).apply(1), 3);
        assert_eq!(x.then(&y).to_string(), "(1 3 2)");
        assert_eq!(y.then(&x).to_string(), "(1 2 3)");
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for text in ["()", "(1 2)(3 4)", "(1 4 3 2)", "(2 5)(3 4)"] {
            let p = Perm::parse(text, 5).unwrap();
            assert_eq!(Perm::parse(&p.to_string(), 5).unwrap(), p);
        }
        assert_eq!(Perm::parse("(1,2)(3,4)", 4).unwrap().to_string(), "(1 2)(3 4)");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::from_images(&[1, 1, 3]).is_err());
        assert!(Perm::parse("(1 5)", 3).is_err());
        assert!(Perm::parse("(1 2)(2 3)", 3).is_err());
        assert!(Perm::parse("1 2", 3).is_err());
    }

    #[test]
    fn cycle_type_and_sign() {
        let p = Perm::parse("(1 2)(3 5)", 5).unwrap();
        assert_eq!(p.cycle_type(), vec![1, 2, 2]);
        assert_eq!(p.sign(), 1);
        assert_eq!(Perm::parse("(1 2)", 3).unwrap().sign(), -1);
        assert_eq!(Perm::parse("(1 2 3)", 3).unwrap().sign(), 1);
    }

    #[test]
    fn symmetric_group_closure() {
        let x = Perm::parse("(1 2)", 3).unwrap();
        let y = Perm::parse("(2 3)", 3).unwrap();
        assert_eq!(generated_subgroup(3, &[x.clone(), y.clone()]).len(), 6);
        assert_eq!(generated_subgroup(3, std::slice::from_ref(&x)).len(), 2);
        assert!(is_transitive(3, &[x.clone(), y]));
        assert!(!is_transitive(3, &[x]));
    }
}
