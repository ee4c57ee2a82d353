use std::collections::BTreeMap;

use super::isometry::{Isometry, Linear};
use super::lattice::Lattice;
use super::CrystalError;

/// A group generated by isometries with diagonal linear parts.
///
/// Such a group is an extension of its translation lattice by a subgroup of
/// the Klein four-group. The handle stores one representative per linear part
/// and the lattice, which together decide membership exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHandle {
    name: String,
    generators: Vec<Isometry>,
    reps: BTreeMap<Linear, Isometry>,
    lattice: Lattice,
}

impl GroupHandle {
    pub fn new(name: impl Into<String>, generators: Vec<Isometry>) -> Self {
        let mut reps = BTreeMap::new();
        reps.insert(Linear::I, Isometry::identity());
        let mut frontier = vec![Isometry::identity()];
        while let Some(r) = frontier.pop() {
            for g in &generators {
                let x = r.then(g);
                if let std::collections::btree_map::Entry::Vacant(e) = reps.entry(x.linear) {
                    e.insert(x);
                    frontier.push(x);
                }
            }
        }
        // Schreier generators of the translation subgroup.
        let mut vectors = Vec::new();
        for r in reps.values() {
            for g in &generators {
                let x = r.then(g);
                let t = x.then(&reps[&x.linear].inverse());
                debug_assert!(t.is_translation());
                vectors.push(t.translation.to_vec());
            }
        }
        GroupHandle {
            name: name.into(),
            lattice: Lattice::span(3, &vectors),
            generators,
            reps,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn point_group(&self) -> Vec<Linear> {
        self.reps.keys().copied().collect()
    }

    pub fn representative(&self, linear: Linear) -> Option<&Isometry> {
        self.reps.get(&linear)
    }

    pub fn contains(&self, g: &Isometry) -> bool {
        match self.reps.get(&g.linear) {
            Some(r) => self.lattice.contains(&g.then(&r.inverse()).translation),
            None => false,
        }
    }

    /// Translation lattice found by multiplying out all words of length at
    /// most `depth` in the generators.
    pub fn lattice_by_closure(&self, depth: usize) -> Lattice {
        let mut seen = vec![Isometry::identity()];
        let mut frontier = seen.clone();
        for _ in 0..depth {
            let mut next = Vec::new();
            for e in &frontier {
                for g in &self.generators {
                    let x = e.then(g);
                    if !seen.contains(&x) {
                        seen.push(x);
                        next.push(x);
                    }
                }
            }
            frontier = next;
        }
        let vectors: Vec<Vec<i64>> = seen
            .iter()
            .filter(|e| e.is_translation())
            .map(|e| e.translation.to_vec())
            .collect();
        Lattice::span(3, &vectors)
    }

    /// Covolume of the lattice times the order of the point group.
    pub fn cell_volume(&self) -> Option<i64> {
        self.lattice.covolume().map(|v| v * self.reps.len() as i64)
    }

    pub fn is_subgroup_of(&self, sup: &GroupHandle) -> bool {
        self.generators.iter().all(|g| sup.contains(g))
    }

    /// Representatives of the right cosets `H·g` of `sub` in `self`.
    pub fn right_cosets(&self, sub: &GroupHandle) -> Result<Vec<Isometry>, CrystalError> {
        if !sub.is_subgroup_of(self) {
            return Err(CrystalError::NotSubgroup {
                sub: sub.name.clone(),
                sup: self.name.clone(),
            });
        }
        let transversal = self
            .lattice
            .transversal(&sub.lattice)
            .ok_or_else(|| CrystalError::InfiniteIndex(sub.name.clone()))?;
        let mut reps: Vec<Isometry> = Vec::new();
        for r in self.reps.values() {
            for mu in &transversal {
                let c = Isometry::translation([mu[0], mu[1], mu[2]]).then(r);
                // H·c = H·d  ⇔  c∘d⁻¹ ∈ H
                if !reps.iter().any(|d| sub.contains(&d.inverse().then(&c))) {
                    reps.push(c);
                }
            }
        }
        Ok(reps)
    }

    pub fn index_of(&self, sub: &GroupHandle) -> Result<usize, CrystalError> {
        self.right_cosets(sub).map(|r| r.len())
    }

    /// Whether `sub` is normal in `self`, by conjugating generators.
    pub fn has_normal(&self, sub: &GroupHandle) -> Result<bool, CrystalError> {
        if !sub.is_subgroup_of(self) {
            return Err(CrystalError::NotSubgroup {
                sub: sub.name.clone(),
                sup: self.name.clone(),
            });
        }
        Ok(self.generators.iter().all(|g| {
            sub.generators
                .iter()
                .all(|h| sub.contains(&g.conjugate(h)) && sub.contains(&g.inverse().conjugate(h)))
        }))
    }
}
