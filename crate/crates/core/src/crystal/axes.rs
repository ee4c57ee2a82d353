use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::GroupHandle;
use super::isometry::{Isometry, Linear};
use super::lattice::Lattice;
use super::CrystalError;
use crate::permcalc::BranchingType;

/// Half of the side of the enumeration cube `[−3, 3]³`, doubled.
const CUBE_HALF_SIDE_DOUBLED: i64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    X,
    Y,
    Z,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::X, Direction::Y, Direction::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The two coordinates transverse to the direction, in increasing order.
    pub fn transverse(self) -> [usize; 2] {
        match self {
            Direction::X => [1, 2],
            Direction::Y => [0, 2],
            Direction::Z => [0, 1],
        }
    }

    pub fn linear(self) -> Linear {
        match self {
            Direction::X => Linear::X,
            Direction::Y => Linear::Y,
            Direction::Z => Linear::Z,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::X => "x",
            Direction::Y => "y",
            Direction::Z => "z",
        }
    }
}

/// A line parallel to a coordinate axis, stored by its two transverse
/// coordinates doubled so that half-integers stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Axis {
    pub direction: Direction,
    pub doubled: [i64; 2],
}

impl Axis {
    /// Axis through the given (undoubled) transverse coordinates.
    pub fn at(direction: Direction, u: i64, v: i64) -> Self {
        Axis {
            direction,
            doubled: [2 * u, 2 * v],
        }
    }

    /// The half-turn about the axis.
    pub fn half_turn(&self) -> Isometry {
        let mut t = [0i64; 3];
        for (c, &d) in self.direction.transverse().iter().zip(&self.doubled) {
            t[*c] = d;
        }
        Isometry::new(self.direction.linear(), t)
    }

    /// The axis of a half-turn; `None` for translations and screw motions.
    pub fn of(g: &Isometry) -> Option<Axis> {
        let d = g.linear.fixed_direction()?;
        if g.translation[d] != 0 {
            return None;
        }
        let direction = Direction::ALL[d];
        let [a, b] = direction.transverse();
        Some(Axis {
            direction,
            doubled: [g.translation[a], g.translation[b]],
        })
    }

    pub fn image(&self, g: &Isometry) -> Axis {
        let s = g.linear.signs();
        let [a, b] = self.direction.transverse();
        Axis {
            direction: self.direction,
            doubled: [
                s[a] * self.doubled[0] + 2 * g.translation[a],
                s[b] * self.doubled[1] + 2 * g.translation[b],
            ],
        }
    }

    pub fn meets_cube(&self) -> bool {
        self.doubled.iter().all(|c| c.abs() <= CUBE_HALF_SIDE_DOUBLED)
    }

    /// The point of the axis with along-axis coordinate zero, doubled.
    fn doubled_point(&self) -> [i64; 3] {
        let mut p = [0; 3];
        for (c, &d) in self.direction.transverse().iter().zip(&self.doubled) {
            p[*c] = d;
        }
        p
    }
}

fn half(d: i64) -> String {
    if d % 2 == 0 {
        (d / 2).to_string()
    } else {
        format!("{d}/2")
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y", "z"];
        let [a, b] = self.direction.transverse();
        write!(
            f,
            "{}-axis({}={},{}={})",
            self.direction.name(),
            names[a],
            half(self.doubled[0]),
            names[b],
            half(self.doubled[1])
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisClass {
    /// Also an axis of the subgroup: local degree 1 upstairs.
    Pseudo,
    /// Not an axis of the subgroup: local degree 2 upstairs.
    Branch,
}

impl AxisClass {
    pub fn name(self) -> &'static str {
        match self {
            AxisClass::Pseudo => "pseudo",
            AxisClass::Branch => "branch",
        }
    }
}

/// One orbit of axes under the subgroup: a component of the preimage link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisOrbit {
    pub id: usize,
    pub canonical: Axis,
    pub members: Vec<Axis>,
    pub class: AxisClass,
    /// Index of the component of the quotient link it covers (its direction).
    pub downstairs: usize,
}

/// Canonical forms of axes modulo a group acting by diagonal isometries.
#[derive(Clone, Debug)]
pub struct AxisCanonicalizer {
    reps: Vec<Isometry>,
    projected: [Lattice; 3],
}

impl AxisCanonicalizer {
    pub fn new(group: &GroupHandle) -> Self {
        let doubled = group.lattice().scaled(2);
        let projected = Direction::ALL.map(|d| doubled.project(&d.transverse()));
        AxisCanonicalizer {
            reps: group
                .point_group()
                .into_iter()
                .filter_map(|l| group.representative(l).copied())
                .collect(),
            projected,
        }
    }

    /// The least reduced image of `axis` over the group: equal exactly for
    /// axes in the same orbit.
    pub fn canonical(&self, axis: &Axis) -> Axis {
        let lattice = &self.projected[axis.direction.index()];
        self.reps
            .iter()
            .map(|r| {
                let img = axis.image(r);
                let red = lattice.reduce(&img.doubled);
                Axis {
                    direction: axis.direction,
                    doubled: [red[0], red[1]],
                }
            })
            .min()
            .expect("nonempty point group")
    }
}

/// Every half-turn axis of `sup` meeting the closed cube, grouped into orbits
/// of `sub` and classified by whether `sub` also rotates about it.
pub fn axis_orbits(sup: &GroupHandle, sub: &GroupHandle) -> Vec<AxisOrbit> {
    let canon = AxisCanonicalizer::new(sub);
    let mut by_form: BTreeMap<Axis, Vec<Axis>> = BTreeMap::new();
    for direction in Direction::ALL {
        let r = CUBE_HALF_SIDE_DOUBLED;
        for a in -r..=r {
            for b in -r..=r {
                let axis = Axis { direction, doubled: [a, b] };
                let is_axis = sup.contains(&axis.half_turn());
                if is_axis {
                    by_form.entry(canon.canonical(&axis)).or_default().push(axis);
                }
            }
        }
    }
    by_form
        .into_iter()
        .enumerate()
        .map(|(id, (canonical, members))| {
            let pseudo = sub.contains(&canonical.half_turn());
            AxisOrbit {
                id,
                canonical,
                members,
                class: if pseudo { AxisClass::Pseudo } else { AxisClass::Branch },
                downstairs: canonical.direction.index(),
            }
        })
        .collect()
}

pub fn orbit_of<'a>(orbits: &'a [AxisOrbit], canon: &AxisCanonicalizer, axis: &Axis) -> Option<&'a AxisOrbit> {
    let form = canon.canonical(axis);
    orbits.iter().find(|o| o.canonical == form)
}

/// Axis-parallel box given by doubled coordinate ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectangle {
    pub lo: [i64; 3],
    pub hi: [i64; 3],
}

impl Rectangle {
    pub fn intersects(&self, other: &Rectangle) -> bool {
        (0..3).all(|i| self.lo[i] <= other.hi[i] && other.lo[i] <= self.hi[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublinkPair {
    pub direction: Direction,
    pub pseudo: Axis,
    pub branch: Axis,
    pub pseudo_orbit: usize,
    pub branch_orbit: usize,
    pub rectangle: Rectangle,
}

/// Evidence that three pseudo/branch pairs of orbits form a doubled
/// Borromean sublink of the preimage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublinkCertificate {
    pub pairs: Vec<SublinkPair>,
    pub clauses: Vec<Clause>,
}

impl SublinkCertificate {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

/// The pairs `(a′, ã)`, `(b′, b̃)`, `(c′, c̃)`: each pseudo axis of the
/// subgroup on a cube face, next to a parallel branch axis on the same face.
pub fn sublink_axes() -> [(Axis, Axis); 3] {
    [
        (Axis::at(Direction::X, 0, 3), Axis::at(Direction::X, 2, 3)),
        (Axis::at(Direction::Y, 3, 0), Axis::at(Direction::Y, 3, 2)),
        (Axis::at(Direction::Z, 0, 3), Axis::at(Direction::Z, 2, 3)),
    ]
}

fn spanning_rectangle(a: &Axis, b: &Axis) -> Rectangle {
    let (pa, pb) = (a.doubled_point(), b.doubled_point());
    let mut lo = [0; 3];
    let mut hi = [0; 3];
    for i in 0..3 {
        if i == a.direction.index() {
            lo[i] = -CUBE_HALF_SIDE_DOUBLED;
            hi[i] = CUBE_HALF_SIDE_DOUBLED;
        } else {
            lo[i] = pa[i].min(pb[i]);
            hi[i] = pa[i].max(pb[i]);
        }
    }
    Rectangle { lo, hi }
}

pub fn doubled_borromean_sublink(
    sub: &GroupHandle,
    orbits: &[AxisOrbit],
) -> SublinkCertificate {
    let canon = AxisCanonicalizer::new(sub);
    let mut clauses = Vec::new();
    let mut pairs = Vec::new();
    let mut clause = |name: String, pass: bool, detail: String| clauses.push(Clause { name, pass, detail });
    for (pseudo, branch) in sublink_axes() {
        let (po, bo) = (orbit_of(orbits, &canon, &pseudo), orbit_of(orbits, &canon, &branch));
        let label = pseudo.direction.name();
        let (Some(po), Some(bo)) = (po, bo) else {
            clause(format!("pair-{label}-orbits"), false, "axis not found among orbits".into());
            continue;
        };
        clause(
            format!("pair-{label}-classes"),
            po.class == AxisClass::Pseudo && bo.class == AxisClass::Branch,
            format!("{pseudo}:{} {branch}:{}", po.class.name(), bo.class.name()),
        );
        clause(
            format!("pair-{label}-parallel"),
            pseudo.direction == branch.direction,
            format!("direction {}", pseudo.direction.name()),
        );
        let rect = spanning_rectangle(&pseudo, &branch);
        let face = (0..3).any(|i| {
            i != pseudo.direction.index() && rect.lo[i] == rect.hi[i] && rect.lo[i].abs() == CUBE_HALF_SIDE_DOUBLED
        });
        clause(format!("pair-{label}-face-rectangle"), face, format!("{rect:?}"));
        clause(
            format!("pair-{label}-same-downstairs"),
            po.downstairs == bo.downstairs,
            format!("component {}", po.downstairs),
        );
        pairs.push(SublinkPair {
            direction: pseudo.direction,
            pseudo,
            branch,
            pseudo_orbit: po.id,
            branch_orbit: bo.id,
            rectangle: rect,
        });
    }
    clause("pair-count".into(), pairs.len() == 3, format!("{} pairs", pairs.len()));
    let mut disjoint = true;
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            disjoint &= !pairs[i].rectangle.intersects(&pairs[j].rectangle);
        }
    }
    clause("rectangles-disjoint".into(), disjoint, "pairwise".into());
    let distinct: std::collections::BTreeSet<usize> = pairs.iter().map(|p| p.pseudo.direction.index()).collect();
    clause("pairs-cover-components".into(), distinct.len() == 3, format!("{distinct:?}"));
    SublinkCertificate { pairs, clauses }
}

/// Preimage orbit data over one component of the quotient link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCover {
    pub orbit: usize,
    /// Local degree of the covering along the orbit.
    pub local_degree: u32,
    /// Degree of the orbit's circle onto the component downstairs.
    pub circle_degree: u64,
    pub cosets: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCover {
    pub component: usize,
    pub branching: BranchingType,
    pub orbits: Vec<OrbitCover>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub components: Vec<ComponentCover>,
}

/// Degree of the quotient map `E³/sub → E³/sup` and its branching over each
/// axis class downstairs.
///
/// A generic point `p` on a reference axis `A` of `sup` has one preimage per
/// right coset `sub·g`, lying on the orbit of `g(A)`. Cosets `sub·g` and
/// `sub·g·R_A` give the same point, so the local degree there is 1 when
/// `g·R_A·g⁻¹ ∈ sub` and 2 otherwise.
pub fn covering_degree(
    sup: &GroupHandle,
    sub: &GroupHandle,
    orbits: &[AxisOrbit],
    reference: &[Isometry],
) -> Result<DegreeReport, CrystalError> {
    let cosets = sup.right_cosets(sub)?;
    let canon = AxisCanonicalizer::new(sub);
    let degree = cosets.len();
    let mut components = Vec::new();
    for rotation in reference {
        let axis = Axis::of(rotation).ok_or_else(|| CrystalError::NotAHalfTurn(rotation.to_string()))?;
        let mut per_orbit: BTreeMap<usize, (u32, usize)> = BTreeMap::new();
        for g in &cosets {
            let image = axis.image(g);
            let orbit = orbit_of(orbits, &canon, &image)
                .ok_or_else(|| CrystalError::Inconsistent(format!("{image} lies in no orbit")))?;
            let local: u32 = if sub.contains(&g.conjugate(rotation)) { 1 } else { 2 };
            let expected = if orbit.class == AxisClass::Pseudo { 1 } else { 2 };
            if local != expected {
                return Err(CrystalError::Inconsistent(format!(
                    "local degree {local} on {} orbit {}",
                    orbit.class.name(),
                    orbit.id
                )));
            }
            let entry = per_orbit.entry(orbit.id).or_insert((local, 0));
            entry.1 += 1;
        }
        let mut branching = BranchingType::default();
        let mut covers = Vec::new();
        for (orbit, (local, count)) in per_orbit {
            if count % local as usize != 0 {
                return Err(CrystalError::Inconsistent(format!("orbit {orbit}: {count} cosets, local degree {local}")));
            }
            let circle_degree = (count / local as usize) as u64;
            branching = branching.union(&BranchingType::uniform(local, circle_degree));
            covers.push(OrbitCover {
                orbit,
                local_degree: local,
                circle_degree,
                cosets: count,
            });
        }
        if branching.total() != degree as u64 {
            return Err(CrystalError::DegreeSum {
                component: axis.direction.index(),
                sum: branching.total(),
                degree,
            });
        }
        components.push(ComponentCover {
            component: axis.direction.index(),
            branching,
            orbits: covers,
        });
    }
    Ok(DegreeReport { degree, components })
}
