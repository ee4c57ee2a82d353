use std::collections::BTreeSet;
use std::sync::OnceLock;

use covercalc_core::crystal::{AxisClass, CrystalData};
use covercalc_core::diagram::{BraidWord, Color, ColoredBraid};
use covercalc_core::pipeline::{build_tower, final_certificate, report_json, ClaimStatus, Tower};
use covercalc_core::rewrite::{normalize, StandardLink, Variant};
use proptest::prelude::*;

fn crystal() -> &'static CrystalData {
    static DATA: OnceLock<CrystalData> = OnceLock::new();
    DATA.get_or_init(|| CrystalData::compute().unwrap())
}

fn golden(word: &str, top: &str, variant: Variant) -> (StandardLink, Tower) {
    let colors: Vec<Color> = top.chars().map(|c| Color::from_char(c).unwrap()).collect();
    let cb = ColoredBraid::propagate(BraidWord::parse(word).unwrap(), &colors).unwrap();
    let link = normalize(&cb, variant).unwrap().link;
    let tower = build_tower(&link, &cb.colors_used(), crystal()).unwrap();
    (link, tower)
}

#[test]
fn crystal_certificates() {
    let c = crystal();
    assert_eq!(c.index, 27);
    assert!(!c.normal);
    assert_eq!(c.orbits.len(), 15);
    assert!(c.sublink.passed());
    assert_eq!(c.sublink.pairs.len(), 3);
    for pair in &c.sublink.pairs {
        assert_eq!(c.orbit(pair.pseudo_orbit).class, AxisClass::Pseudo);
        assert_ne!(c.orbit(pair.branch_orbit).class, AxisClass::Pseudo);
    }
    assert_eq!(c.degree.degree, 27);
    for comp in &c.degree.components {
        assert_eq!(comp.branching.total(), 27);
        assert!(comp.branching.support().iter().all(|&d| d <= 2));
    }
}

#[test]
fn trefoil_tower() {
    let (link, tower) = golden("strands=2 s1 s1 s1", "RY", Variant::Borromean);
    assert_eq!((link.m, link.n), (6, 5));
    assert_eq!(tower.total_degree(), 243 * 30);
    let cert = final_certificate(&tower, crystal());
    assert!(cert.passed(), "{cert:?}");
    assert_eq!(tower.stage("h").unwrap().inventory.len(), 6);
    assert!(tower.final_inventory().support().is_subset(&[1, 2, 4].into()));
}

#[test]
fn identity_braid_tower() {
    let (link, tower) = golden("strands=3", "RYB", Variant::Borromean);
    assert_eq!((link.m, link.n), (0, 3));
    assert_eq!(tower.total_degree(), 243 * 3);
    let cert = final_certificate(&tower, crystal());
    assert!(cert.passed());
    assert_eq!(cert.claim("stage-degrees").unwrap().evidence, "p=3 f=SKIPPED g=3 h=3 t=27 total=729");
}

#[test]
fn whitehead_trefoil_stops_after_h() {
    let (_, tower) = golden("strands=2 s1 s1 s1", "RY", Variant::Whitehead);
    assert!(!tower.stage("t").unwrap().is_done());
    assert_eq!(tower.total_degree(), 3 * 6 * 5 * 3);
    let cert = final_certificate(&tower, crystal());
    for id in ["i-branch-set", "ii-branching-type", "iii-index"] {
        assert_eq!(cert.claim(id).unwrap().status, ClaimStatus::Skipped);
    }
}

fn link(m: usize, n: usize, variant: Variant) -> StandardLink {
    StandardLink { variant, n, m, horizontals: Vec::new(), verticals: Vec::new(), specials: Vec::new() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tower_bookkeeping(m in 0usize..=7, n in 0usize..=7, whitehead in any::<bool>()) {
        let variant = if whitehead { Variant::Whitehead } else { Variant::Borromean };
        let colors: BTreeSet<Color> = [Color::R, Color::B].into();
        let tower = build_tower(&link(m, n, variant), &colors, crystal()).unwrap();
        let (mm, nn) = (m.max(1) as u64, n.max(1) as u64);
        let expected = if whitehead { 9 * mm * nn } else { 243 * mm * nn };
        prop_assert_eq!(tower.total_degree(), expected);
        let h = &tower.stage("h").unwrap().inventory;
        prop_assert_eq!(h.len(), 6);
        for s in &tower.stages {
            prop_assert!(s.inventory.check_degrees().is_ok());
            if s.name != "t" {
                prop_assert!(s.inventory.max_local_degree() <= 2);
            }
        }
        prop_assert!(tower.final_inventory().support().is_subset(&[1, 2, 4].into()));
        let a = report_json(&tower, &final_certificate(&tower, crystal()));
        let b = report_json(&tower, &final_certificate(&tower, crystal()));
        prop_assert_eq!(a.to_string(), b.to_string());
        prop_assert!(final_certificate(&tower, crystal()).passed());
    }
}
