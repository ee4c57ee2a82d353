//! Exact integer engine for the crystallographic groups `Û ⊃ Ũ` generated by
//! half-turns about coordinate-parallel lines.
//!
//! `Û` rotates about `a = (t, 0, 1)`, `b = (1, t, 0)`, `c = (0, 1, t)` and `Ũ`
//! about the axes three times as far out, `a′ = (t, 0, 3)`, `b′ = (3, t, 0)`,
//! `c′ = (0, 3, t)`. The quotient map `E³/Ũ → E³/Û` is the 27-fold map `t`.

mod axes;
mod group;
mod isometry;
mod lattice;

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use axes::{
    axis_orbits, covering_degree, doubled_borromean_sublink, orbit_of, sublink_axes, Axis,
    AxisCanonicalizer, AxisClass, AxisOrbit, Clause, ComponentCover, DegreeReport, Direction,
    OrbitCover, Rectangle, SublinkCertificate, SublinkPair,
};
pub use group::GroupHandle;
pub use isometry::{Isometry, Linear};
pub use lattice::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("{sub} is not a subgroup of {sup}")]
    NotSubgroup { sub: String, sup: String },
    #[error("translation lattice of {0} has infinite index")]
    InfiniteIndex(String),
    #[error("{0} is not a half-turn")]
    NotAHalfTurn(String),
    #[error("local degrees over component {component} sum to {sum}, covering degree is {degree}")]
    DegreeSum { component: usize, sum: u64, degree: usize },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Which {
    /// `Û`
    Uhat,
    /// `Ũ`
    Utilde,
}

/// Half-turns about `(t, 0, s)`, `(s, t, 0)` and `(0, s, t)`.
fn half_turns(s: i64) -> Vec<Isometry> {
    vec![
        Isometry::new(Linear::X, [0, 0, 2 * s]),
        Isometry::new(Linear::Y, [2 * s, 0, 0]),
        Isometry::new(Linear::Z, [0, 2 * s, 0]),
    ]
}

pub fn generators(which: Which) -> Vec<Isometry> {
    match which {
        Which::Uhat => half_turns(1),
        Which::Utilde => half_turns(3),
    }
}

pub fn group(which: Which) -> GroupHandle {
    match which {
        Which::Uhat => GroupHandle::new("Û", generators(which)),
        Which::Utilde => GroupHandle::new("Ũ", generators(which)),
    }
}

pub fn membership(g: &Isometry, group: &GroupHandle) -> bool {
    group.contains(g)
}

pub fn index(sup: &GroupHandle, sub: &GroupHandle) -> Result<usize, CrystalError> {
    sup.index_of(sub)
}

pub fn is_normal(sub: &GroupHandle, sup: &GroupHandle) -> Result<bool, CrystalError> {
    sup.has_normal(sub)
}

/// Everything computed about the pair `Û ⊃ Ũ`.
#[derive(Clone, Debug)]
pub struct CrystalData {
    pub uhat: GroupHandle,
    pub utilde: GroupHandle,
    pub index: usize,
    pub normal: bool,
    pub orbits: Vec<AxisOrbit>,
    pub sublink: SublinkCertificate,
    pub degree: DegreeReport,
}

impl CrystalData {
    pub fn compute() -> Result<Self, CrystalError> {
        let uhat = group(Which::Uhat);
        let utilde = group(Which::Utilde);
        let index = index(&uhat, &utilde)?;
        let normal = is_normal(&utilde, &uhat)?;
        let orbits = axis_orbits(&uhat, &utilde);
        let sublink = doubled_borromean_sublink(&utilde, &orbits);
        let degree = covering_degree(&uhat, &utilde, &orbits, &generators(Which::Uhat))?;
        Ok(CrystalData {
            uhat,
            utilde,
            index,
            normal,
            orbits,
            sublink,
            degree,
        })
    }

    pub fn orbit(&self, id: usize) -> &AxisOrbit {
        &self.orbits[id]
    }

    /// Structured text listing of the orbits.
    pub fn orbit_report(&self) -> String {
        let mut out = String::new();
        for o in &self.orbits {
            let members: Vec<String> = o.members.iter().map(|a| a.to_string()).collect();
            writeln!(
                out,
                "orbit id={} direction={} rep={} class={} downstairs={} members={}",
                o.id,
                o.canonical.direction.name(),
                o.canonical,
                o.class.name(),
                o.downstairs,
                members.join(";")
            )
            .expect("writing to a string");
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let lat = |l: &Lattice| format!("{:?}", l.basis());
        writeln!(w, "lattice Û {} covolume={:?}", lat(self.uhat.lattice()), self.uhat.lattice().covolume()).ok();
        writeln!(w, "lattice Ũ {} covolume={:?}", lat(self.utilde.lattice()), self.utilde.lattice().covolume()).ok();
        writeln!(w, "index={}", self.index).ok();
        writeln!(w, "normal={}", self.normal).ok();
        let pseudo = self.orbits.iter().filter(|o| o.class == AxisClass::Pseudo).count();
        writeln!(w, "orbits={} branch={} pseudo={}", self.orbits.len(), self.orbits.len() - pseudo, pseudo).ok();
        out.push_str(&self.orbit_report());
        let status = if self.sublink.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "sublink certificate {status} pairs={}", self.sublink.pairs.len()).ok();
        for c in &self.sublink.clauses {
            writeln!(out, "  {} {} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail).ok();
        }
        writeln!(out, "degree t={}", self.degree.degree).ok();
        for c in &self.degree.components {
            writeln!(out, "  component {} type={} sum={}", c.component, c.branching, c.branching.total()).ok();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_formulas() {
        assert_eq!(generators(Which::Utilde)[0].to_string(), "(x, -y, 6-z)");
        assert_eq!(generators(Which::Uhat)[0].to_string(), "(x, -y, 2-z)");
        for g in generators(Which::Uhat).iter().chain(&generators(Which::Utilde)) {
            assert!(g.then(g).is_identity());
        }
    }

    #[test]
    fn lattices_agree_both_ways() {
        for which in [Which::Uhat, Which::Utilde] {
            let g = group(which);
            assert_eq!(&g.lattice_by_closure(6), g.lattice());
        }
        let u = group(Which::Uhat);
        assert_eq!(u.lattice().basis(), &[vec![2, 2, 2], vec![0, 4, 0], vec![0, 0, 4]]);
        assert_eq!(u.lattice().covolume(), Some(32));
        assert_eq!(u.cell_volume(), Some(32 * 4));
        assert_eq!(u.point_group(), Linear::ALL.to_vec());
    }

    #[test]
    fn membership_examples() {
        let u = group(Which::Uhat);
        for g in generators(Which::Utilde) {
            assert!(membership(&g, &u));
        }
        assert!(membership(&Isometry::translation([2, 2, -2]), &u));
        assert!(!membership(&Isometry::translation([1, 0, 0]), &u));
    }

    #[test]
    fn index_and_normality() {
        let (u, v) = (group(Which::Uhat), group(Which::Utilde));
        assert_eq!(index(&u, &v).unwrap(), 27);
        assert_eq!(index(&u, &u).unwrap(), 1);
        assert!(matches!(index(&v, &u), Err(CrystalError::NotSubgroup { .. })));
        assert!(!is_normal(&v, &u).unwrap());
        assert!(is_normal(&u, &u).unwrap());
        let translations: Vec<Isometry> = u
            .lattice()
            .basis()
            .iter()
            .map(|r| Isometry::translation([r[0], r[1], r[2]]))
            .collect();
        let t = GroupHandle::new("T", translations);
        assert!(is_normal(&t, &u).unwrap());
        assert_eq!(index(&u, &t).unwrap(), 4);
    }

    #[test]
    fn fifteen_orbits() {
        let data = CrystalData::compute().unwrap();
        assert_eq!(data.orbits.len(), 15);
        for d in Direction::ALL {
            let of_dir: Vec<&AxisOrbit> = data.orbits.iter().filter(|o| o.canonical.direction == d).collect();
            assert_eq!(of_dir.len(), 5);
            assert_eq!(of_dir.iter().filter(|o| o.class == AxisClass::Pseudo).count(), 1);
        }
        let total: usize = data.orbits.iter().map(|o| o.members.len()).sum();
        assert_eq!(total, 36);
    }

    #[test]
    fn orbits_are_stable_under_subgroup() {
        let data = CrystalData::compute().unwrap();
        let canon = AxisCanonicalizer::new(&data.utilde);
        for o in &data.orbits {
            for a in &o.members {
                assert_eq!(canon.canonical(a), o.canonical);
                for g in data.utilde.generators() {
                    assert_eq!(canon.canonical(&a.image(g)), o.canonical);
                }
            }
        }
    }

    #[test]
    fn sublink_and_degree() {
        let data = CrystalData::compute().unwrap();
        assert!(data.sublink.passed(), "{:?}", data.sublink.clauses);
        assert_eq!(data.sublink.pairs.len(), 3);
        assert_eq!(data.degree.degree, 27);
        for c in &data.degree.components {
            assert_eq!(c.branching.total(), 27);
            assert_eq!(c.branching.to_string(), "{1^3,2^12}");
            assert!(c.orbits.iter().all(|o| o.circle_degree == 3));
        }
    }
}
