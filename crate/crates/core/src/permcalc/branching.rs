//! Branching types and branch inventories of (composite) branched coverings.
//!
//! A [`BranchingType`] is the multiset of local degrees over one component of
//! the branch set: the preimage of a small meridian disk is a disjoint union of
//! disks, each mapped by `z ↦ z^d`. For a degree `D` covering the local degrees
//! over any component sum to `D`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::disk::dihedral_rep;
use super::PermError;

/// Multiset of local degrees, kept as `degree -> multiplicity`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchingType(BTreeMap<u32, u64>);

impl BranchingType {
    pub fn new<I: IntoIterator<Item = u32>>(degrees: I) -> Self {
        let mut map = BTreeMap::new();
        for d in degrees {
            assert!(d > 0, "local degrees are positive");
            *map.entry(d).or_insert(0) += 1;
        }
        BranchingType(map)
    }

    /// `copies` disks, each of local degree `degree`.
    pub fn uniform(degree: u32, copies: u64) -> Self {
        assert!(degree > 0, "local degrees are positive");
        let mut map = BTreeMap::new();
        if copies > 0 {
            map.insert(degree, copies);
        }
        BranchingType(map)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Σ local degrees, the covering degree seen from this component.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|(&d, &c)| u64::from(d) * c).sum()
    }

    /// Number of preimage disks.
    pub fn disks(&self) -> u64 {
        self.0.values().sum()
    }

    /// The set of local degrees that occur.
    pub fn support(&self) -> BTreeSet<u32> {
        self.0.keys().copied().collect()
    }

    pub fn multiplicity(&self, degree: u32) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// Multiset union.
    pub fn union(&self, other: &BranchingType) -> BranchingType {
        let mut map = self.0.clone();
        for (&d, &c) in &other.0 {
            *map.entry(d).or_insert(0) += c;
        }
        BranchingType(map)
    }

    /// The multiset repeated `times` times.
    pub fn repeated(&self, times: u64) -> BranchingType {
        BranchingType(
            self.0
                .iter()
                .filter(|_| times > 0)
                .map(|(&d, &c)| (d, c * times))
                .collect(),
        )
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.0.iter().map(|(&d, &c)| (d, c))
    }
}

impl fmt::Display for BranchingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(d, c)| if *c == 1 { d.to_string() } else { format!("{d}^{c}") })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for BranchingType {
    type Err = PermError;

    /// Accepts `{1,2,2}` as well as the compressed `{1,2^2}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PermError::Syntax(s.to_string());
        let body = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut map = BTreeMap::new();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (d, c) = match part.split_once('^') {
                Some((d, c)) => (d, c.parse::<u64>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let d: u32 = d.parse().map_err(|_| bad())?;
            if d == 0 || c == 0 {
                return Err(bad());
            }
            *map.entry(d).or_insert(0) += c;
        }
        Ok(BranchingType(map))
    }
}

/// Every local degree of `upper` multiplied by the local degree of the lower
/// map at the image point.
pub fn compose_branching(upper: &BranchingType, lower_local_degree: u32) -> BranchingType {
    assert!(lower_local_degree >= 1, "local degree must be positive");
    BranchingType(
        upper
            .0
            .iter()
            .map(|(&d, &c)| (d * lower_local_degree, c))
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentTag {
    Horizontal,
    Vertical,
    Special,
    Axis,
    Branch,
    Pseudo,
}

impl ComponentTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ComponentTag::Horizontal => "horizontal",
            ComponentTag::Vertical => "vertical",
            ComponentTag::Special => "special",
            ComponentTag::Axis => "axis",
            ComponentTag::Branch => "branch",
            ComponentTag::Pseudo => "pseudo",
        }
    }
}

impl FromStr for ComponentTag {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "horizontal" => ComponentTag::Horizontal,
            "vertical" => ComponentTag::Vertical,
            "special" => ComponentTag::Special,
            "axis" => ComponentTag::Axis,
            "branch" => ComponentTag::Branch,
            "pseudo" => ComponentTag::Pseudo,
            _ => return Err(PermError::Syntax(s.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchComponent {
    pub label: String,
    pub branching: BranchingType,
    pub tags: BTreeSet<ComponentTag>,
}

impl BranchComponent {
    pub fn new(label: impl Into<String>, branching: BranchingType, tags: &[ComponentTag]) -> Self {
        BranchComponent {
            label: label.into(),
            branching,
            tags: tags.iter().copied().collect(),
        }
    }

    pub fn has_tag(&self, tag: ComponentTag) -> bool {
        self.tags.contains(&tag)
    }
}

/// Branch set of a covering of the given degree, one entry per component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchInventory {
    pub degree: u64,
    components: Vec<BranchComponent>,
}

impl BranchInventory {
    pub fn new(degree: u64) -> Self {
        BranchInventory {
            degree,
            components: Vec::new(),
        }
    }

    pub fn from_components(degree: u64, components: Vec<BranchComponent>) -> Result<Self, PermError> {
        let mut inv = BranchInventory::new(degree);
        for c in components {
            inv.push(c)?;
        }
        Ok(inv)
    }

    pub fn push(&mut self, component: BranchComponent) -> Result<(), PermError> {
        if self.get(&component.label).is_some() {
            return Err(PermError::DuplicateLabel(component.label));
        }
        self.components.push(component);
        Ok(())
    }

    pub fn components(&self) -> &[BranchComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&BranchComponent> {
        self.components.iter().find(|c| c.label == label)
    }

    pub fn get_mut(&mut self, label: &str) -> Option<&mut BranchComponent> {
        self.components.iter_mut().find(|c| c.label == label)
    }

    pub fn rename(&mut self, from: &str, to: &str) -> Result<(), PermError> {
        if self.get(to).is_some() {
            return Err(PermError::DuplicateLabel(to.to_string()));
        }
        let c = self
            .get_mut(from)
            .ok_or_else(|| PermError::MissingLabel(from.to_string()))?;
        c.label = to.to_string();
        Ok(())
    }

    /// Checks that every component's local degrees sum to the header degree.
    pub fn check_degrees(&self) -> Result<(), PermError> {
        for c in &self.components {
            if c.branching.total() != self.degree {
                return Err(PermError::DegreeSum {
                    label: c.label.clone(),
                    sum: c.branching.total(),
                    degree: self.degree,
                });
            }
        }
        Ok(())
    }

    /// Union of the supports of all components.
    pub fn support(&self) -> BTreeSet<u32> {
        self.components
            .iter()
            .flat_map(|c| c.branching.support())
            .collect()
    }

    pub fn max_local_degree(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.branching.max_degree())
            .max()
            .unwrap_or(0)
    }

    /// Structured text record, header `degree=D` then one line per component.
    pub fn to_text(&self) -> String {
        let mut out = format!("degree={}\n", self.degree);
        for c in &self.components {
            let tags: Vec<&str> = c.tags.iter().map(|t| t.as_str()).collect();
            out.push_str(&format!(
                "component label={} type={} tags={}\n",
                c.label,
                c.branching,
                tags.join(",")
            ));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, PermError> {
        let bad = |line: &str| PermError::Syntax(line.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| bad(""))?;
        let degree: u64 = header
            .strip_prefix("degree=")
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| bad(header))?;
        let mut inv = BranchInventory::new(degree);
        for line in lines {
            let rest = line.strip_prefix("component ").ok_or_else(|| bad(line))?;
            let (mut label, mut ty, mut tags) = (None, None, BTreeSet::new());
            for field in rest.split_whitespace() {
                match field.split_once('=') {
                    Some(("label", v)) => label = Some(v.to_string()),
                    Some(("type", v)) => ty = Some(v.parse::<BranchingType>()?),
                    Some(("tags", v)) => {
                        for t in v.split(',').filter(|t| !t.is_empty()) {
                            tags.insert(t.parse::<ComponentTag>()?);
                        }
                    }
                    _ => return Err(bad(line)),
                }
            }
            inv.push(BranchComponent {
                label: label.ok_or_else(|| bad(line))?,
                branching: ty.ok_or_else(|| bad(line))?,
                tags,
            })?;
        }
        Ok(inv)
    }
}

/// Replaces a type-`{k}` axis by the two components `S¹×{A}` and `S¹×{B}` of
/// the dihedral solid-torus cover, leaving everything else untouched.
///
/// Each disk over the axis (one per earlier sheet) is re-covered by the
/// dihedral k-fold disk cover, so the new components get the cycle lengths of
/// `ρ(x)` and `ρ(y)` once per such disk. The new labels are `<axis>.A` and
/// `<axis>.B`; they keep the axis tags other than [`ComponentTag::Axis`].
pub fn torus_modification(
    inventory: &BranchInventory,
    axis_label: &str,
    k: u32,
) -> Result<BranchInventory, PermError> {
    let axis = inventory
        .get(axis_label)
        .ok_or_else(|| PermError::MissingLabel(axis_label.to_string()))?;
    let support = axis.branching.support();
    if support.len() != 1 || !support.contains(&k) {
        return Err(PermError::AxisType {
            label: axis_label.to_string(),
            found: axis.branching.to_string(),
            expected: k,
        });
    }
    if k < 2 {
        return Err(PermError::TooFewSheets(k as usize));
    }
    let copies = axis.branching.disks();
    let rep = dihedral_rep(k as usize)?;
    let typed = |cycle_type: Vec<usize>| {
        BranchingType::new(cycle_type.into_iter().map(|l| l as u32)).repeated(copies)
    };
    let mut tags = axis.tags.clone();
    tags.remove(&ComponentTag::Axis);
    let a = BranchComponent {
        label: format!("{axis_label}.A"),
        branching: typed(rep.rho_x().cycle_type()),
        tags: tags.clone(),
    };
    let b = BranchComponent {
        label: format!("{axis_label}.B"),
        branching: typed(rep.rho_y().cycle_type()),
        tags,
    };
    let mut out = BranchInventory::new(inventory.degree);
    for c in inventory.components() {
        if c.label == axis_label {
            out.push(a.clone())?;
            out.push(b.clone())?;
        } else {
            out.push(c.clone())?;
        }
    }
    Ok(out)
}

/// One orbit of the rotation on branch components, and the label of its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub members: Vec<String>,
    pub image: String,
}

impl Orbit {
    pub fn new<S: AsRef<str>>(members: &[S], image: impl Into<String>) -> Self {
        Orbit {
            members: members.iter().map(|m| m.as_ref().to_string()).collect(),
            image: image.into(),
        }
    }
}

/// Composes a covering with the quotient by a rotation of order `order`.
///
/// `orbits` must partition the components. A component whose orbit has size
/// `s` is invariant under a subgroup of order `order / s`, so each point of the
/// image has `order / s` preimages on it; the image component collects the
/// local degrees over all those preimages. The fixed axis is appended with
/// local degree `order` over each of the old sheets and tagged
/// [`ComponentTag::Axis`].
pub fn quotient_by_rotation(
    inventory: &BranchInventory,
    order: u32,
    orbits: &[Orbit],
    axis_label: &str,
) -> Result<BranchInventory, PermError> {
    if order < 2 {
        return Err(PermError::TrivialRotation(order));
    }
    let mut used = BTreeSet::new();
    let mut out = BranchInventory::new(inventory.degree * u64::from(order));
    for orbit in orbits {
        let size = orbit.members.len() as u32;
        if size == 0 || !order.is_multiple_of(size) {
            return Err(PermError::InconsistentOrbit {
                image: orbit.image.clone(),
                reason: format!("orbit size {size} does not divide rotation order {order}"),
            });
        }
        let stabilizer = u64::from(order / size);
        let mut branching = BranchingType::default();
        let mut tags = None;
        for member in &orbit.members {
            let c = inventory
                .get(member)
                .ok_or_else(|| PermError::MissingLabel(member.clone()))?;
            if !used.insert(member.clone()) {
                return Err(PermError::InconsistentOrbit {
                    image: orbit.image.clone(),
                    reason: format!("component {member} appears in two orbits"),
                });
            }
            branching = branching.union(&c.branching.repeated(stabilizer));
            tags.get_or_insert_with(|| c.tags.clone());
        }
        out.push(BranchComponent {
            label: orbit.image.clone(),
            branching,
            tags: tags.unwrap_or_default(),
        })?;
    }
    if let Some(missing) = inventory.components().iter().find(|c| !used.contains(&c.label)) {
        return Err(PermError::InconsistentOrbit {
            image: missing.label.clone(),
            reason: "component is not covered by any orbit".to_string(),
        });
    }
    out.push(BranchComponent::new(
        axis_label,
        BranchingType::uniform(order, inventory.degree),
        &[ComponentTag::Axis],
    ))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bt(s: &str) -> BranchingType {
        s.parse().unwrap()
    }

    fn axis_inventory(k: u32) -> BranchInventory {
        BranchInventory::from_components(
            u64::from(k),
            vec![
                BranchComponent::new("L", bt("{1,2}").repeated(1), &[ComponentTag::Horizontal]),
                BranchComponent::new("z", BranchingType::uniform(k, 1), &[ComponentTag::Axis]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn type_text_roundtrip() {
        let t = bt("{1,2,2}");
        assert_eq!(t.to_string(), "{1,2^2}");
        assert_eq!(bt(&t.to_string()), t);
        assert_eq!(t.total(), 5);
        assert!("{0}".parse::<BranchingType>().is_err());
        assert!("{1,}".parse::<BranchingType>().is_ok());
        assert!("{1,x}".parse::<BranchingType>().is_err());
        assert!("1,2".parse::<BranchingType>().is_err());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose_branching(&bt("{1,2}"), 2), bt("{2,4}"));
        assert_eq!(compose_branching(&bt("{1,2}"), 1), bt("{1,2}"));
        assert_eq!(compose_branching(&bt("{3}"), 2), bt("{6}"));
    }

    #[test]
    fn torus_modification_k5() {
        let inv = axis_inventory(5);
        let out = torus_modification(&inv, "z", 5).unwrap();
        assert_eq!(out.get("z.A").unwrap().branching, bt("{1,2,2}"));
        assert_eq!(out.get("z.B").unwrap().branching, bt("{1,2,2}"));
        assert!(out.get("z").is_none());
        assert_eq!(out.get("L"), inv.get("L"));
    }

    #[test]
    fn torus_modification_k2() {
        let mut inv = BranchInventory::new(2);
        inv.push(BranchComponent::new("z", bt("{2}"), &[ComponentTag::Axis])).unwrap();
        let out = torus_modification(&inv, "z", 2).unwrap();
        assert_eq!(out.get("z.A").unwrap().branching, bt("{2}"));
        assert_eq!(out.get("z.B").unwrap().branching, bt("{1,1}"));
    }

    #[test]
    fn torus_modification_errors() {
        let mut inv = BranchInventory::new(1);
        inv.push(BranchComponent::new("z", bt("{1}"), &[ComponentTag::Axis])).unwrap();
        assert!(torus_modification(&inv, "z", 1).is_err());
        assert!(matches!(
            torus_modification(&inv, "nope", 2),
            Err(PermError::MissingLabel(_))
        ));
        let inv5 = axis_inventory(5);
        assert!(matches!(
            torus_modification(&inv5, "z", 3),
            Err(PermError::AxisType { .. })
        ));
    }

    #[test]
    fn quotient_merges_cyclic_orbit() {
        let n = 4u32;
        let mut inv = BranchInventory::new(3);
        let labels: Vec<String> = (0..n).map(|j| format!("H{j}")).collect();
        for l in &labels {
            inv.push(BranchComponent::new(l.clone(), bt("{1,2}"), &[ComponentTag::Horizontal]))
                .unwrap();
        }
        let out = quotient_by_rotation(&inv, n, &[Orbit::new(&labels, "H")], "axis").unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out.degree, 12);
        assert_eq!(out.get("H").unwrap().branching.support(), [1, 2].into());
        assert_eq!(out.get("axis").unwrap().branching.support(), [4].into());
        out.check_degrees().unwrap();
    }

    #[test]
    fn quotient_invariant_component_is_wrapped() {
        let mut inv = BranchInventory::new(3);
        inv.push(BranchComponent::new("H", bt("{1,2}"), &[])).unwrap();
        let out = quotient_by_rotation(&inv, 3, &[Orbit::new(&["H"], "H'")], "ax").unwrap();
        assert_eq!(out.get("H'").unwrap().branching, bt("{1^3,2^3}"));
        out.check_degrees().unwrap();
    }

    #[test]
    fn quotient_errors() {
        let mut inv = BranchInventory::new(3);
        inv.push(BranchComponent::new("a", bt("{1,2}"), &[])).unwrap();
        inv.push(BranchComponent::new("b", bt("{1,2}"), &[])).unwrap();
        assert!(matches!(
            quotient_by_rotation(&inv, 1, &[Orbit::new(&["a", "b"], "x")], "ax"),
            Err(PermError::TrivialRotation(1))
        ));
        assert!(matches!(
            quotient_by_rotation(&inv, 3, &[Orbit::new(&["a", "b"], "x")], "ax"),
            Err(PermError::InconsistentOrbit { .. })
        ));
        assert!(quotient_by_rotation(&inv, 2, &[Orbit::new(&["a"], "x")], "ax").is_err());
    }

    #[test]
    fn inventory_text_roundtrip() {
        let inv = axis_inventory(5);
        let text = inv.to_text();
        assert!(text.starts_with("degree=5\n"));
        assert_eq!(BranchInventory::from_text(&text).unwrap(), inv);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let mut inv = BranchInventory::new(3);
        inv.push(BranchComponent::new("a", bt("{1,2}"), &[])).unwrap();
        assert!(inv.push(BranchComponent::new("a", bt("{1,2}"), &[])).is_err());
    }
}
