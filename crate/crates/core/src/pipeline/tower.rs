use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::crystal::CrystalData;
use crate::diagram::Color;
use crate::permcalc::{
    compose_branching, quotient_by_rotation, torus_modification, BranchComponent, BranchInventory,
    BranchingType, ComponentTag, Orbit,
};
use crate::rewrite::{StandardLink, Variant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "reason")]
pub enum StageStatus {
    Done,
    Skipped(String),
}

/// One map of the tower, with the branch inventory of the composite so far.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub degree: u64,
    pub status: StageStatus,
    pub inventory: BranchInventory,
}

impl Stage {
    pub fn is_done(&self) -> bool {
        self.status == StageStatus::Done
    }
}

/// The tower `p, f, g, h, t` over a standardized link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tower {
    pub variant: Variant,
    pub m: usize,
    pub n: usize,
    pub colors: BTreeSet<Color>,
    pub stages: Vec<Stage>,
}

impl Tower {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn total_degree(&self) -> u64 {
        self.stages.iter().map(|s| s.degree).product()
    }

    /// Inventory after the last stage that ran.
    pub fn final_inventory(&self) -> &BranchInventory {
        &self
            .stages
            .iter()
            .rev()
            .find(|s| s.is_done())
            .expect("stage p always runs")
            .inventory
    }
}

const UNIT: &[ComponentTag] = &[];

/// A simple 3-fold covering: one sheet unbranched, two meeting in a fold.
fn simple() -> BranchingType {
    BranchingType::new([1, 2])
}

fn stage_p(link: &StandardLink) -> Result<BranchInventory, PipelineError> {
    let mut inv = BranchInventory::new(3);
    for h in 0..link.n {
        inv.push(BranchComponent::new(format!("H{h}"), simple(), &[ComponentTag::Horizontal]))?;
    }
    for v in 0..link.m {
        inv.push(BranchComponent::new(format!("V{v}"), simple(), &[ComponentTag::Vertical]))?;
    }
    for v in 0..link.m {
        for h in 0..link.n {
            for kind in ["e", "z"] {
                inv.push(BranchComponent::new(format!("P{v}.{h}{kind}"), simple(), &[ComponentTag::Special]))?;
            }
        }
    }
    Ok(inv)
}

/// Quotient by a rotation of the given order, then the dihedral repair of the
/// new axis. Orders below 2 leave the covering alone and only relabel.
fn rotate(
    inv: &BranchInventory,
    order: usize,
    orbits: &[Orbit],
    prefix: &str,
    repaired: [&str; 2],
) -> Result<(BranchInventory, u64, StageStatus), PipelineError> {
    let orbits: Vec<&Orbit> = orbits.iter().filter(|o| !o.members.is_empty()).collect();
    if order < 2 {
        let mut out = BranchInventory::new(inv.degree);
        for o in orbits {
            let [only] = &o.members[..] else {
                return Err(PipelineError::Internal(format!("orbit {} under trivial rotation", o.image)));
            };
            let c = inv.get(only).ok_or_else(|| PipelineError::Internal(format!("missing {only}")))?;
            out.push(BranchComponent {
                label: o.image.clone(),
                ..c.clone()
            })?;
        }
        let reason = format!("rotation order {order} < 2, nothing to quotient");
        return Ok((out, 1, StageStatus::Skipped(reason)));
    }
    let owned: Vec<Orbit> = orbits.into_iter().cloned().collect();
    let axis = format!("{prefix}.axis");
    let quotient = quotient_by_rotation(inv, order as u32, &owned, &axis)?;
    let mut out = torus_modification(&quotient, &axis, order as u32)?;
    out.rename(&format!("{axis}.A"), repaired[0])?;
    out.rename(&format!("{axis}.B"), repaired[1])?;
    Ok((out, order as u64, StageStatus::Done))
}

fn stage_f(inv: &BranchInventory, link: &StandardLink) -> Result<(BranchInventory, u64, StageStatus), PipelineError> {
    let mut orbits: Vec<Orbit> = (0..link.n)
        .map(|h| Orbit::new(&[format!("H{h}")], format!("f.H{h}")))
        .collect();
    let verticals: Vec<String> = (0..link.m).map(|v| format!("V{v}")).collect();
    orbits.push(Orbit::new(&verticals, "f.V"));
    for h in 0..link.n {
        for kind in ["e", "z"] {
            let members: Vec<String> = (0..link.m).map(|v| format!("P{v}.{h}{kind}")).collect();
            orbits.push(Orbit::new(&members, format!("f.P{h}{kind}")));
        }
    }
    rotate(inv, link.m, &orbits, "f", ["f.VA", "f.VB"])
}

fn present(inv: &BranchInventory, labels: &[String]) -> Vec<String> {
    labels.iter().filter(|l| inv.get(l).is_some()).cloned().collect()
}

fn stage_g(inv: &BranchInventory, link: &StandardLink) -> Result<(BranchInventory, u64, StageStatus), PipelineError> {
    let by_h = |fmt: &dyn Fn(usize) -> String| -> Vec<String> { present(inv, &(0..link.n).map(fmt).collect::<Vec<_>>()) };
    let mut orbits = vec![Orbit::new(&by_h(&|h| format!("f.H{h}")), "g.H")];
    for (from, to) in [("f.V", "g.V"), ("f.VA", "g.VA"), ("f.VB", "g.VB")] {
        orbits.push(Orbit::new(&present(inv, &[from.to_string()]), to));
    }
    orbits.push(Orbit::new(&by_h(&|h| format!("f.P{h}e")), "g.Pe"));
    orbits.push(Orbit::new(&by_h(&|h| format!("f.P{h}z")), "g.Pz"));
    rotate(inv, link.n, &orbits, "g", ["g.HA", "g.HB"])
}

/// Fills in every slot the order-3 symmetry needs: missing ones, and the four
/// extra circles, are unbranched.
fn stage_h(inv: &BranchInventory) -> Result<(BranchInventory, u64, StageStatus), PipelineError> {
    let mut filled = inv.clone();
    let unbranched = BranchingType::uniform(1, inv.degree);
    for slot in ["g.H", "g.V", "g.VA", "g.VB", "g.Pe", "g.Pz", "g.HA", "g.HB", "γ1", "δ1", "ε1", "ζ1"] {
        if filled.get(slot).is_none() {
            filled.push(BranchComponent::new(slot, unbranched.clone(), UNIT))?;
        }
    }
    let orbits = [
        Orbit::new(&["g.VA", "g.V", "g.H"], "h.A1"),
        Orbit::new(&["g.VB", "γ1", "δ1"], "h.A2"),
        Orbit::new(&["g.HA", "g.Pe", "g.Pz"], "h.B1"),
        Orbit::new(&["g.HB", "ε1", "ζ1"], "h.B2"),
    ];
    let (mut out, degree, status) = rotate(&filled, 3, &orbits, "h", ["h.C1", "h.C2"])?;
    for c in ["h.A1", "h.A2", "h.B1", "h.B2", "h.C1", "h.C2"] {
        if let Some(comp) = out.get_mut(c) {
            comp.tags = [ComponentTag::Branch].into();
        }
    }
    Ok((out, degree, status))
}

/// The doubled-link pairs after stage `h`, one per component downstairs.
pub const H_PAIRS: [[&str; 2]; 3] = [["h.A1", "h.A2"], ["h.B1", "h.B2"], ["h.C1", "h.C2"]];

/// Composes with the 27-fold map: over component `j` of the Borromean rings,
/// each preimage orbit of local degree `ℓ` and circle degree `w` carries the
/// upper branching (or `D` unbranched sheets) multiplied by `ℓ`, `w` times.
fn stage_t(inv: &BranchInventory, crystal: &CrystalData) -> Result<BranchInventory, PipelineError> {
    let upper_degree = inv.degree;
    let mut out = BranchInventory::new(upper_degree * crystal.degree.degree as u64);
    for (j, cover) in crystal.degree.components.iter().enumerate() {
        let pair = crystal
            .sublink
            .pairs
            .iter()
            .find(|p| p.direction.index() == cover.component)
            .ok_or_else(|| PipelineError::Internal(format!("no sublink pair over component {j}")))?;
        let mut branching = BranchingType::default();
        for orbit in &cover.orbits {
            let upper = if orbit.orbit == pair.pseudo_orbit {
                inv.get(H_PAIRS[j][0]).map(|c| c.branching.clone())
            } else if orbit.orbit == pair.branch_orbit {
                inv.get(H_PAIRS[j][1]).map(|c| c.branching.clone())
            } else {
                None
            };
            let upper = upper.unwrap_or_else(|| BranchingType::uniform(1, upper_degree));
            branching = branching.union(&compose_branching(&upper, orbit.local_degree).repeated(orbit.circle_degree));
        }
        out.push(BranchComponent::new(format!("t.K{j}"), branching, &[ComponentTag::Branch]))?;
    }
    Ok(out)
}

/// Builds the tower for a standardized link whose coloring used `colors`.
pub fn build_tower(
    link: &StandardLink,
    colors: &BTreeSet<Color>,
    crystal: &CrystalData,
) -> Result<Tower, PipelineError> {
    let mut stages = Vec::new();
    let p = stage_p(link)?;
    stages.push(Stage {
        name: "p".into(),
        degree: 3,
        status: StageStatus::Done,
        inventory: p.clone(),
    });
    let (f, df, sf) = stage_f(&p, link)?;
    stages.push(Stage { name: "f".into(), degree: df, status: sf, inventory: f.clone() });
    let (g, dg, sg) = stage_g(&f, link)?;
    stages.push(Stage { name: "g".into(), degree: dg, status: sg, inventory: g.clone() });
    let (h, dh, sh) = stage_h(&g)?;
    stages.push(Stage { name: "h".into(), degree: dh, status: sh, inventory: h.clone() });
    match link.variant {
        Variant::Borromean => {
            let t = stage_t(&h, crystal)?;
            stages.push(Stage {
                name: "t".into(),
                degree: crystal.degree.degree as u64,
                status: StageStatus::Done,
                inventory: t,
            });
        }
        Variant::Whitehead => stages.push(Stage {
            name: "t".into(),
            degree: 1,
            status: StageStatus::Skipped("the 27-fold map is built over the Borromean rings only".into()),
            inventory: h,
        }),
    }
    for s in &stages {
        s.inventory.check_degrees()?;
    }
    Ok(Tower {
        variant: link.variant,
        m: link.m,
        n: link.n,
        colors: colors.clone(),
        stages,
    })
}
