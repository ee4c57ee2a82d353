//! The covering tower over a standardized link, its certificate and reports.

mod certificate;
mod report;
mod tower;

use thiserror::Error;

use crate::crystal::CrystalError;
use crate::permcalc::PermError;
use crate::rewrite::RewriteError;

pub use certificate::{final_certificate, Certificate, Claim, ClaimStatus};
pub use report::{report_json, report_text, REPORT_SCHEMA};
pub use tower::{build_tower, Stage, StageStatus, Tower, H_PAIRS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;
    use std::sync::OnceLock;

    use super::*;
    use crate::crystal::CrystalData;
    use crate::diagram::Color;
    use crate::rewrite::{StandardLink, Variant};

    fn crystal() -> &'static CrystalData {
        static DATA: OnceLock<CrystalData> = OnceLock::new();
        DATA.get_or_init(|| CrystalData::compute().unwrap())
    }

    fn link(variant: Variant, m: usize, n: usize) -> StandardLink {
        StandardLink {
            variant,
            n,
            m,
            horizontals: Vec::new(),
            verticals: Vec::new(),
            specials: Vec::new(),
        }
    }

    fn tower(variant: Variant, m: usize, n: usize) -> Tower {
        let colors: BTreeSet<Color> = [Color::R, Color::Y].into();
        build_tower(&link(variant, m, n), &colors, crystal()).unwrap()
    }

    #[test]
    fn stage_degrees_multiply() {
        let t = tower(Variant::Borromean, 2, 3);
        let degrees: Vec<u64> = t.stages.iter().map(|s| s.degree).collect();
        assert_eq!(degrees, [3, 2, 3, 3, 27]);
        assert_eq!(t.total_degree(), 1458);
        assert_eq!(t.final_inventory().degree, 1458);
        for s in &t.stages {
            s.inventory.check_degrees().unwrap();
        }
    }

    #[test]
    fn doubled_link_after_h() {
        for variant in [Variant::Borromean, Variant::Whitehead] {
            for (m, n) in [(1, 1), (2, 3), (6, 5), (0, 3), (4, 0)] {
                let t = tower(variant, m, n);
                let h = &t.stage("h").unwrap().inventory;
                assert_eq!(h.len(), 6, "m={m} n={n}");
                for label in H_PAIRS.iter().flatten() {
                    assert!(h.get(label).is_some(), "{label}");
                }
                assert!(h.support().is_subset(&[1, 2].into()));
            }
        }
    }

    #[test]
    fn repairs_keep_folds() {
        let t = tower(Variant::Borromean, 3, 4);
        for name in ["p", "f", "g", "h"] {
            assert!(t.stage(name).unwrap().inventory.max_local_degree() <= 2, "{name}");
        }
        let last = t.final_inventory();
        assert_eq!(last.len(), 3);
        assert_eq!(last.support(), [1, 2, 4].into());
    }

    #[test]
    fn degenerate_counts_skip() {
        let t = tower(Variant::Borromean, 0, 2);
        assert!(matches!(t.stage("f").unwrap().status, StageStatus::Skipped(_)));
        assert_eq!(t.stage("f").unwrap().degree, 1);
        assert_eq!(t.total_degree(), 243 * 2);
        let t = tower(Variant::Borromean, 1, 1);
        assert_eq!(t.total_degree(), 243);
    }

    #[test]
    fn whitehead_stops_after_h() {
        let t = tower(Variant::Whitehead, 2, 3);
        let last = t.stages.last().unwrap();
        assert_eq!(last.name, "t");
        assert!(!last.is_done());
        assert_eq!(t.total_degree(), 54);
        assert_eq!(t.final_inventory().len(), 6);
        let cert = final_certificate(&t, crystal());
        assert_eq!(cert.claim("iii-index").unwrap().status, ClaimStatus::Skipped);
        assert!(cert.passed());
    }

    #[test]
    fn certificate_claims() {
        let t = tower(Variant::Borromean, 2, 3);
        let cert = final_certificate(&t, crystal());
        assert!(cert.passed(), "{cert:?}");
        let iii = cert.claim("iii-index").unwrap();
        assert!(iii.evidence.contains("[G1:G]=3") && iii.evidence.contains("[U:G]=1458"));
        let iv = cert.claim("iv-index-factorization").unwrap();
        assert!(iv.evidence.contains("[G1:G']=2 [G':G0]=3"));
        assert!(cert.claim("iv-meridian-cycle-type").unwrap().evidence.contains("R:2+2+2"));
        assert_eq!(cert.claim("ii-branching-type").unwrap().evidence, "observed={1,2,4}");
    }

    #[test]
    fn single_color_fails_factorization() {
        let colors: BTreeSet<Color> = [Color::B].into();
        let t = build_tower(&link(Variant::Borromean, 1, 1), &colors, crystal()).unwrap();
        let cert = final_certificate(&t, crystal());
        assert_eq!(cert.claim("iv-index-factorization").unwrap().status, ClaimStatus::Fail);
        assert!(!cert.passed());
    }

    #[test]
    fn reports_are_reproducible() {
        let a = tower(Variant::Borromean, 2, 3);
        let b = tower(Variant::Borromean, 2, 3);
        let ja = report_json(&a, &final_certificate(&a, crystal()));
        let jb = report_json(&b, &final_certificate(&b, crystal()));
        assert_eq!(ja.to_string(), jb.to_string());
        assert_eq!(ja["schema"], REPORT_SCHEMA);
        assert_eq!(ja["total_degree"], 1458);
        assert_eq!(ja["stages"][4]["components"].as_array().unwrap().len(), 3);
        assert_eq!(ja["certificate"]["passed"], true);
        let text = report_text(&a, &final_certificate(&a, crystal()));
        assert!(text.contains("total degree=1458"));
        assert!(text.contains("PASS ii-branching-type"));
    }
}
