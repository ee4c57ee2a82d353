//! Connected k-fold covers of a disk branched over two interior points.
//!
//! The fundamental group of the twice-punctured disk is free on two meridians
//! `x` and `y`; a cover is a pair of permutations. The dihedral cover sends
//! `x` and `y` to reflections of a regular k-gon, so that `xy`, which runs once
//! around the boundary circle, acts as a rotation by one vertex.

use serde::{Deserialize, Serialize};

use super::perm::{is_transitive, Perm};
use super::PermError;

/// Images of the two meridian generators of the twice-punctured disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskRep {
    k: usize,
    rho_x: Perm,
    rho_y: Perm,
}

impl DiskRep {
    /// Both images must be involutions of the same degree `k ≥ 1`.
    pub fn new(rho_x: Perm, rho_y: Perm) -> Result<Self, PermError> {
        let k = rho_x.degree();
        if k == 0 || rho_y.degree() != k {
            return Err(PermError::DegreeMismatch {
                expected: k,
                found: rho_y.degree(),
            });
        }
        for p in [&rho_x, &rho_y] {
            if !p.is_involution() {
                return Err(PermError::NotInvolution(p.to_string()));
            }
        }
        Ok(DiskRep { k, rho_x, rho_y })
    }

    pub fn sheets(&self) -> usize {
        self.k
    }

    pub fn rho_x(&self) -> &Perm {
        &self.rho_x
    }

    pub fn rho_y(&self) -> &Perm {
        &self.rho_y
    }

    /// Image of the boundary loop `xy`.
    pub fn boundary_monodromy(&self) -> Perm {
        self.rho_x.then(&self.rho_y)
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(self.k, &[self.rho_x.clone(), self.rho_y.clone()])
    }
}

/// Reflections of the regular k-gon with vertex labels as in
/// `ρ(x) = (1,2)(3,k)(4,k-1)⋯`, `ρ(y) = (2,k)(3,k-1)(4,k-2)⋯`.
///
/// For `k = 2` the second list has no transpositions and `ρ(y)` is the
/// identity, which keeps `ρ(x)ρ(y)` a 2-cycle.
pub fn dihedral_rep(k: usize) -> Result<DiskRep, PermError> {
    if k < 2 {
        return Err(PermError::TooFewSheets(k));
    }
    let mut x_pairs: Vec<[usize; 2]> = vec![[1, 2]];
    let (mut lo, mut hi) = (3, k);
    while lo < hi {
        x_pairs.push([lo, hi]);
        lo += 1;
        hi -= 1;
    }
    let mut y_pairs: Vec<[usize; 2]> = Vec::new();
    let (mut lo, mut hi) = (2, k);
    while lo < hi {
        y_pairs.push([lo, hi]);
        lo += 1;
        hi -= 1;
    }
    let as_cycles = |pairs: &[[usize; 2]]| -> Result<Perm, PermError> {
        let refs: Vec<&[usize]> = pairs.iter().map(|p| p.as_slice()).collect();
        Perm::from_cycles(k, &refs)
    };
    DiskRep::new(as_cycles(&x_pairs)?, as_cycles(&y_pairs)?)
}

/// Riemann–Hurwitz for the cover of the disk: `k·χ(D²) − Σ (k − #cycles)`.
pub fn euler_char_disk_cover(rep: &DiskRep) -> i64 {
    let k = rep.k as i64;
    let deficiency = |p: &Perm| k - p.cycle_count() as i64;
    k - deficiency(&rep.rho_x) - deficiency(&rep.rho_y)
}

/// True iff the boundary circle is covered by a single circle k times.
pub fn boundary_is_k_cycle(rep: &DiskRep) -> bool {
    let b = rep.boundary_monodromy();
    b.cycle_type() == vec![rep.k]
}
