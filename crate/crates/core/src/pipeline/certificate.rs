use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::tower::{Tower, H_PAIRS};
use crate::crystal::{AxisClass, CrystalData};
use crate::permcalc::{
    generated_subgroup, pseudo_branch_double_cover, regular_representation, BranchComponent,
    BranchInventory, BranchingType, ComponentTag,
};
use crate::rewrite::Variant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
}

impl ClaimStatus {
    fn of(ok: bool) -> Self {
        if ok {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimStatus::Pass => "PASS",
            ClaimStatus::Fail => "FAIL",
            ClaimStatus::Skipped => "SKIPPED",
        }
    }
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub status: ClaimStatus,
    pub evidence: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claims: Vec<Claim>,
}

impl Certificate {
    fn push(&mut self, id: &str, status: ClaimStatus, evidence: impl Into<String>) {
        self.claims.push(Claim {
            id: id.to_string(),
            status,
            evidence: evidence.into(),
        });
    }

    fn check(&mut self, id: &str, ok: bool, evidence: impl Into<String>) {
        self.push(id, ClaimStatus::of(ok), evidence);
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// No claim failed; skipped claims are allowed.
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != ClaimStatus::Fail)
    }
}

fn fmt_set(set: &BTreeSet<u32>) -> String {
    let items: Vec<String> = set.iter().map(u32::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn stage_claims(cert: &mut Certificate, tower: &Tower, crystal: &CrystalData) {
    let expected = [
        ("p", 3),
        ("f", tower.m.max(1) as u64),
        ("g", tower.n.max(1) as u64),
        ("h", 3),
        ("t", if tower.variant == Variant::Borromean { crystal.degree.degree as u64 } else { 1 }),
    ];
    let observed: Vec<(String, u64)> = tower.stages.iter().map(|s| (s.name.clone(), s.degree)).collect();
    let ok = observed.len() == expected.len()
        && observed.iter().zip(expected).all(|((n, d), (en, ed))| n == en && *d == ed);
    let listing: Vec<String> = tower
        .stages
        .iter()
        .map(|s| {
            if s.is_done() {
                format!("{}={}", s.name, s.degree)
            } else {
                format!("{}=SKIPPED", s.name)
            }
        })
        .collect();
    cert.check("stage-degrees", ok, format!("{} total={}", listing.join(" "), tower.total_degree()));

    let h = tower.stage("h").map(|s| &s.inventory);
    match h {
        Some(h) => {
            let paired = H_PAIRS.iter().flatten().all(|l| h.get(l).is_some());
            let support = h.support();
            let ok = h.len() == 6 && paired && support.iter().all(|d| *d <= 2) && h.check_degrees().is_ok();
            cert.check(
                "doubled-link",
                ok,
                format!("components={} pairs={} support={}", h.len(), if paired { 3 } else { 0 }, fmt_set(&support)),
            );
        }
        None => cert.check("doubled-link", false, "no stage h"),
    }

    let repaired: Vec<String> = ["f", "g", "h"]
        .iter()
        .filter_map(|n| tower.stage(n))
        .map(|s| format!("{}:{}", s.name, s.inventory.max_local_degree()))
        .collect();
    let ok = ["f", "g", "h"]
        .iter()
        .filter_map(|n| tower.stage(n))
        .all(|s| s.inventory.max_local_degree() <= 2);
    cert.check("repair-max-degree", ok, repaired.join(" "));
}

fn final_claims(cert: &mut Certificate, tower: &Tower) {
    let t = tower.stage("t").filter(|s| s.is_done());
    let Some(t) = t else {
        let why = "stage t not built for this variant";
        cert.push("i-branch-set", ClaimStatus::Skipped, why);
        cert.push("ii-branching-type", ClaimStatus::Skipped, why);
        cert.push("iii-index", ClaimStatus::Skipped, why);
        return;
    };
    let inv = &t.inventory;
    cert.check(
        "i-branch-set",
        inv.len() == 3 && inv.check_degrees().is_ok(),
        format!("components={} degree={}", inv.len(), inv.degree),
    );
    let support = inv.support();
    let allowed: BTreeSet<u32> = [1, 2, 4].into();
    cert.check(
        "ii-branching-type",
        support.is_subset(&allowed),
        format!("observed={}", fmt_set(&support)),
    );
    let g1 = tower.stage("p").map_or(0, |s| s.degree);
    let total = tower.total_degree();
    let expected = 243 * tower.m.max(1) as u64 * tower.n.max(1) as u64;
    cert.check(
        "iii-index",
        g1 == 3 && total == expected && inv.degree == total,
        format!("[G1:G]={g1} [U:G]={total} expected={expected}"),
    );
}

fn regular_claims(cert: &mut Certificate, tower: &Tower) {
    let gens: Vec<_> = tower.colors.iter().map(|c| c.transposition()).collect();
    let image = generated_subgroup(3, &gens);
    let even = image.iter().filter(|p| p.sign() == 1).count();
    let (outer, inner) = (image.len() / even, even);
    cert.check(
        "iv-index-factorization",
        outer == 2 && inner == 3,
        format!("|image|={} [G1:G']={outer} [G':G0]={inner}", image.len()),
    );

    let mut types = Vec::new();
    let mut ok = !gens.is_empty();
    for (color, t) in tower.colors.iter().zip(&gens) {
        match regular_representation(t) {
            Ok(eta) => {
                let ct = eta.cycle_type();
                ok &= ct == [2, 2, 2];
                let parts: Vec<String> = ct.iter().map(usize::to_string).collect();
                types.push(format!("{}:{}", color.as_char(), parts.join("+")));
            }
            Err(e) => {
                ok = false;
                types.push(format!("{}:{e}", color.as_char()));
            }
        }
    }
    cert.check("iv-meridian-cycle-type", ok, types.join(" "));
}

fn pseudo_claim(cert: &mut Certificate, crystal: &CrystalData) {
    let degree = crystal.degree.degree as u64;
    let mut inv = BranchInventory::new(degree);
    let mut pseudo = BTreeSet::new();
    for o in &crystal.orbits {
        let tag = if o.class == AxisClass::Pseudo {
            pseudo.insert(format!("orbit{}", o.id));
            ComponentTag::Pseudo
        } else {
            ComponentTag::Branch
        };
        let comp = BranchComponent::new(format!("orbit{}", o.id), BranchingType::uniform(1, degree), &[tag]);
        if inv.push(comp).is_err() {
            cert.check("iv-pseudo-double-cover", false, format!("duplicate orbit {}", o.id));
            return;
        }
    }
    match pseudo_branch_double_cover(&inv) {
        Ok((sign, u)) => {
            let branched: BTreeSet<String> = u.components().iter().map(|c| c.label.clone()).collect();
            let ok = sign.kernel_index == 2
                && branched == pseudo
                && u.components().iter().all(|c| c.branching == BranchingType::uniform(2, 1));
            cert.check(
                "iv-pseudo-double-cover",
                ok,
                format!("kernel-index={} branched={} pseudo={}", sign.kernel_index, branched.len(), pseudo.len()),
            );
        }
        Err(e) => cert.check("iv-pseudo-double-cover", false, e.to_string()),
    }
}

fn crystal_claims(cert: &mut Certificate, crystal: &CrystalData) {
    let failing: Vec<&str> = crystal
        .sublink
        .clauses
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    cert.check(
        "crystal-sublink",
        crystal.sublink.passed() && crystal.sublink.pairs.len() == 3,
        format!("pairs={} failing={}", crystal.sublink.pairs.len(), failing.len()),
    );
    let d = &crystal.degree;
    let sums_ok = d.components.iter().all(|c| c.branching.total() == d.degree as u64);
    let support: BTreeSet<u32> = d.components.iter().flat_map(|c| c.branching.support()).collect();
    let types: Vec<String> = d.components.iter().map(|c| c.branching.to_string()).collect();
    cert.check(
        "crystal-degree",
        d.degree == 27 && crystal.index == 27 && sums_ok && support.iter().all(|l| *l <= 2),
        format!("degree={} index={} types={}", d.degree, crystal.index, types.join(";")),
    );
}

/// Every claim about a tower: stage bookkeeping, the final branch set, the
/// index skeleton and the crystal data it was built from.
pub fn final_certificate(tower: &Tower, crystal: &CrystalData) -> Certificate {
    let mut cert = Certificate::default();
    stage_claims(&mut cert, tower, crystal);
    final_claims(&mut cert, tower);
    regular_claims(&mut cert, tower);
    pseudo_claim(&mut cert, crystal);
    crystal_claims(&mut cert, crystal);
    cert
}
