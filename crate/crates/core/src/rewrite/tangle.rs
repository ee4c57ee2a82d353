use serde::{Deserialize, Serialize};

use super::RewriteError;
use crate::diagram::{color_string, Color};
use crate::permcalc::Perm;

/// Riemann–Hurwitz data for the 3-sheeted cover of a ball's boundary sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleCertificate {
    /// Top endpoints left to right, then bottom endpoints left to right.
    pub boundary: String,
    /// `(sheets, χ)` for each connected component of the cover.
    pub components: Vec<(usize, i64)>,
    pub euler_characteristic: i64,
    /// The cover is a single 2-sphere.
    pub certified: bool,
}

impl TangleCertificate {
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(sheets, chi)| format!("{sheets}:{chi}"))
            .collect();
        format!(
            "boundary={} chi={} parts={} certified={}",
            self.boundary,
            self.euler_characteristic,
            parts.join("+"),
            self.certified
        )
    }
}

fn orbits(gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = [false; 3];
    let mut out = Vec::new();
    for start in 1..=3 {
        if seen[start - 1] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start - 1] = true;
        let mut i = 0;
        while i < orbit.len() {
            for g in gens {
                let y = g.apply(orbit[i]);
                if !seen[y - 1] {
                    seen[y - 1] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Certifies that the boundary sphere of a tangle ball with `2k` colored
/// endpoints is covered by a 2-sphere.
///
/// The first half of `boundary` is the top, the second half the bottom; the
/// products of the two halves must agree. χ is computed per component of the
/// cover (per orbit of the group the labels generate), with each endpoint
/// contributing its deficiency `|orbit| − #cycles` on that orbit.
pub fn tangle_cover_certificate(boundary: &[Color]) -> Result<TangleCertificate, RewriteError> {
    if boundary.is_empty() || !boundary.len().is_multiple_of(2) {
        return Err(RewriteError::BoundarySize(boundary.len()));
    }
    let labels: Vec<Perm> = boundary.iter().map(|c| c.transposition()).collect();
    let half = labels.len() / 2;
    let product = |ps: &[Perm]| ps.iter().fold(Perm::identity(3), |acc, p| acc.then(p));
    if product(&labels[..half]) != product(&labels[half..]) {
        return Err(RewriteError::InconsistentBoundary(color_string(boundary)));
    }
    let mut components = Vec::new();
    for orbit in orbits(&labels) {
        let size = orbit.len();
        let deficiency: usize = labels
            .iter()
            .map(|p| {
                let cycles = p.cycles().into_iter().filter(|c| orbit.contains(&c[0])).count();
                size - cycles
            })
            .sum();
        components.push((size, 2 * size as i64 - deficiency as i64));
    }
    let euler_characteristic = components.iter().map(|(_, chi)| chi).sum();
    let certified = components.len() == 1 && euler_characteristic == 2;
    Ok(TangleCertificate {
        boundary: color_string(boundary),
        components,
        euler_characteristic,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::*;

    #[test]
    fn crossing_ball_is_certified() {
        // positive crossing: top (R, Y), bottom (B, R)
        let cert = tangle_cover_certificate(&[R, Y, B, R]).unwrap();
        assert_eq!(cert.euler_characteristic, 2);
        assert_eq!(cert.components, vec![(3, 2)]);
        assert!(cert.certified);
    }

    #[test]
    fn alternating_labels() {
        let cert = tangle_cover_certificate(&[R, Y, R, Y]).unwrap();
        assert!(cert.certified);
    }

    #[test]
    fn monochromatic_cover_splits() {
        let cert = tangle_cover_certificate(&[R, R, R, R]).unwrap();
        assert_eq!(cert.euler_characteristic, 2);
        assert_eq!(cert.components, vec![(2, 0), (1, 2)]);
        assert!(!cert.certified);
    }

    #[test]
    fn inconsistent_boundary_rejected() {
        assert!(matches!(
            tangle_cover_certificate(&[R, Y, Y, R]),
            Err(RewriteError::InconsistentBoundary(_))
        ));
        assert!(tangle_cover_certificate(&[R, Y, B]).is_err());
    }

    #[test]
    fn each_point_has_deficiency_one() {
        for a in Color::ALL {
            for b in Color::ALL {
                let w = Color::conj(a, b);
                let cert = tangle_cover_certificate(&[a, b, w, a]).unwrap();
                if a != b {
                    assert_eq!(cert.euler_characteristic, 6 - 4);
                }
            }
        }
    }
}
