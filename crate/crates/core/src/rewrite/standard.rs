use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::moves::{
    apply_move, FlipSite, LinkState, Move, MoveEntry, MoveLog, Peanut, Rewriter, Special,
};
use super::RewriteError;
use crate::diagram::{Color, ColoredBraid};

/// Which 2-universal link the special components realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Borromean,
    Whitehead,
}

impl Variant {
    pub fn peanut(self) -> Peanut {
        match self {
            Variant::Borromean => Peanut::P,
            Variant::Whitehead => Peanut::Q,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Borromean => "borromean",
            Variant::Whitehead => "whitehead",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "borromean" => Ok(Variant::Borromean),
            "whitehead" => Ok(Variant::Whitehead),
            _ => Err(RewriteError::BadVariant(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "at")]
pub enum HorizontalSource {
    /// A braid position (0-based), closed up into a circle.
    Strand(usize),
    /// The small circle that replaced crossing `k`.
    Circle(usize),
}

/// Horizontal component `j` sits at `φ = 2πj/n` on the torus `ρ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Horizontal {
    pub j: usize,
    pub source: HorizontalSource,
}

/// Vertical component `j` sits at `θ = 2πj/m` on the torus `ρ = 0.99`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertical {
    pub j: usize,
    pub crossing: usize,
    pub side: usize,
}

/// Normal form: horizontal, vertical and special components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardLink {
    pub variant: Variant,
    pub n: usize,
    pub m: usize,
    pub horizontals: Vec<Horizontal>,
    pub verticals: Vec<Vertical>,
    pub specials: Vec<Special>,
}

impl StandardLink {
    /// Reads the normal form off a fully standardized state.
    pub fn from_state(state: &LinkState, variant: Variant) -> Result<Self, RewriteError> {
        if state.checkpoint.is_none() || !state.horizontal_crossings().is_empty() {
            return Err(RewriteError::StageMismatch("state is not fully standardized".into()));
        }
        if state.specials.iter().any(|s| s.peanut != variant.peanut()) {
            return Err(RewriteError::MixedPeanuts);
        }
        let s = state.braid.strands();
        let crossings = state.braid.len();
        let horizontals = (0..s)
            .map(|p| Horizontal { j: p, source: HorizontalSource::Strand(p) })
            .chain((0..crossings).map(|k| Horizontal { j: s + k, source: HorizontalSource::Circle(k) }))
            .collect::<Vec<_>>();
        let verticals = (0..crossings)
            .flat_map(|k| (0..2).map(move |side| Vertical { j: 2 * k + side, crossing: k, side }))
            .collect::<Vec<_>>();
        Ok(StandardLink {
            variant,
            n: horizontals.len(),
            m: verticals.len(),
            horizontals,
            verticals,
            specials: state.specials.clone(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("standard-link v1\n");
        out.push_str(&format!("variant={}\nn={}\nm={}\n", self.variant, self.n, self.m));
        for h in &self.horizontals {
            let source = match h.source {
                HorizontalSource::Strand(p) => format!("strand:{p}"),
                HorizontalSource::Circle(k) => format!("circle:{k}"),
            };
            out.push_str(&format!("horizontal j={} source={source}\n", h.j));
        }
        for v in &self.verticals {
            out.push_str(&format!("vertical j={} crossing={} side={}\n", v.j, v.crossing, v.side));
        }
        for sp in &self.specials {
            let i = sp.incidence;
            out.push_str(&format!(
                "special v={} h={} template={} colors={}\n",
                i.vertical,
                i.horizontal,
                sp.peanut,
                i.colors()
            ));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, RewriteError> {
        let bad = |line: &str| RewriteError::BadStandardLink(line.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some("standard-link v1") {
            return Err(bad("missing header"));
        }
        let mut scalar = |key: &str| -> Result<String, RewriteError> {
            let line = lines.next().ok_or_else(|| bad(key))?;
            line.strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(|| bad(line))
        };
        let variant: Variant = scalar("variant")?.parse()?;
        let n: usize = scalar("n")?.parse().map_err(|_| bad("n"))?;
        let m: usize = scalar("m")?.parse().map_err(|_| bad("m"))?;
        let mut link = StandardLink {
            variant,
            n,
            m,
            horizontals: Vec::new(),
            verticals: Vec::new(),
            specials: Vec::new(),
        };
        for line in lines {
            let mut words = line.split_whitespace();
            let kind = words.next().ok_or_else(|| bad(line))?;
            let fields: Vec<(&str, &str)> = words
                .map(|w| w.split_once('=').ok_or_else(|| bad(line)))
                .collect::<Result<_, _>>()?;
            let get = |key: &str| {
                fields
                    .iter()
                    .find(|(k, _)| *k == key)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| bad(line))
            };
            let num = |key: &str| -> Result<usize, RewriteError> { get(key)?.parse().map_err(|_| bad(line)) };
            match kind {
                "horizontal" => {
                    let source = match get("source")?.split_once(':') {
                        Some(("strand", p)) => HorizontalSource::Strand(p.parse().map_err(|_| bad(line))?),
                        Some(("circle", k)) => HorizontalSource::Circle(k.parse().map_err(|_| bad(line))?),
                        _ => return Err(bad(line)),
                    };
                    link.horizontals.push(Horizontal { j: num("j")?, source });
                }
                "vertical" => link.verticals.push(Vertical {
                    j: num("j")?,
                    crossing: num("crossing")?,
                    side: num("side")?,
                }),
                "special" => {
                    let peanut = match get("template")? {
                        "P" => Peanut::P,
                        "Q" => Peanut::Q,
                        _ => return Err(bad(line)),
                    };
                    let colors: Vec<Color> = get("colors")?
                        .chars()
                        .map(Color::from_char)
                        .collect::<Option<_>>()
                        .ok_or_else(|| bad(line))?;
                    let [over, under_in, under_out] = colors[..] else {
                        return Err(bad(line));
                    };
                    link.specials.push(Special {
                        incidence: super::moves::Incidence {
                            vertical: num("v")?,
                            horizontal: num("h")?,
                            over,
                            under_in,
                            under_out,
                        },
                        peanut,
                    });
                }
                _ => return Err(bad(line)),
            }
        }
        if link.horizontals.len() != link.n || link.verticals.len() != link.m {
            return Err(bad("component counts disagree with header"));
        }
        Ok(link)
    }

    /// Every special is tied to exactly one incidence with indices in range.
    pub fn check(&self) -> Result<(), RewriteError> {
        let mut seen = std::collections::BTreeSet::new();
        for sp in &self.specials {
            let i = sp.incidence;
            if i.vertical >= self.m || i.horizontal >= self.n || !seen.insert((i.vertical, i.horizontal)) {
                return Err(RewriteError::BadStandardLink(format!("special at v={},h={}", i.vertical, i.horizontal)));
            }
        }
        Ok(())
    }
}

/// Flips the sign of a tricolored crossing by the rational-tangle move
/// `σ^ε ↔ σ^{-2ε}`.
///
/// On a tricolored pair of strands `σ³` acts trivially on colors, so both
/// sides carry the same boundary colors. A site of span 1 turns one letter
/// into two inverted letters and returns the span-2 site that undoes it; a
/// span-2 site (two equal letters) goes back.
pub fn montesinos_flip(
    cb: &ColoredBraid,
    site: FlipSite,
) -> Result<(ColoredBraid, MoveEntry, FlipSite), RewriteError> {
    let mut rw = Rewriter::new(LinkState::new(cb.clone()));
    let applied = rw.apply(Move::Flip(site))?;
    let (state, log) = rw.finish();
    let entry = log.entries.into_iter().next().expect("one entry");
    Ok((state.braid, entry, applied.inverse_site.expect("flip has an inverse site")))
}

fn run_tricolored(rw: &mut Rewriter) -> Result<(), RewriteError> {
    if !rw.state().braid.representation().transitive {
        return Err(RewriteError::NotTransitive);
    }
    while let Some(&k) = rw.state().braid.monochromatic_crossings().first() {
        rw.apply(Move::Slide { index: k })?;
    }
    Ok(())
}

fn run_positive(rw: &mut Rewriter) -> Result<(), RewriteError> {
    if let Some(&k) = rw.state().braid.monochromatic_crossings().first() {
        return Err(RewriteError::MonochromaticCrossing { index: k });
    }
    while let Some(k) = rw.state().braid.word().letters().iter().position(|l| !l.positive) {
        rw.apply(Move::Flip(FlipSite::single(k)))?;
    }
    Ok(())
}

fn run_standardize(rw: &mut Rewriter, variant: Variant) -> Result<(), RewriteError> {
    let braid = rw.state().braid.clone();
    if !braid.representation().transitive {
        return Err(RewriteError::NotTransitive);
    }
    if let Some(k) = braid.word().letters().iter().position(|l| !l.positive) {
        return Err(RewriteError::NegativeCrossing { index: k });
    }
    if let Some(&k) = braid.monochromatic_crossings().first() {
        return Err(RewriteError::MonochromaticCrossing { index: k });
    }
    let crossings = braid.len();
    for crossing in 0..crossings {
        rw.apply(Move::CrossingToCircle { crossing })?;
    }
    for crossing in 0..crossings {
        rw.apply(Move::TripleSplit { crossing })?;
    }
    for crossing in 0..crossings {
        rw.apply(Move::AbsorbCircle { crossing })?;
    }
    rw.apply(Move::Checkpoint)?;
    for inc in rw.state().horizontal_crossings() {
        rw.apply(Move::Eliminate {
            vertical: inc.vertical,
            horizontal: inc.horizontal,
            peanut: variant.peanut(),
        })?;
    }
    Ok(())
}

/// Repairs every monochromatic crossing by sliding in a strand of another
/// color. Each repair is an isotopy checked by braid equality.
pub fn make_tricolored(cb: &ColoredBraid) -> Result<(ColoredBraid, MoveLog), RewriteError> {
    let mut rw = Rewriter::new(LinkState::new(cb.clone()));
    run_tricolored(&mut rw)?;
    let (state, log) = rw.finish();
    Ok((state.braid, log))
}

/// Turns each negative letter into two positive ones by a flip.
pub fn make_positive(cb: &ColoredBraid) -> Result<(ColoredBraid, MoveLog), RewriteError> {
    let mut rw = Rewriter::new(LinkState::new(cb.clone()));
    run_positive(&mut rw)?;
    let (state, log) = rw.finish();
    Ok((state.braid, log))
}

/// Output of the standardization.
#[derive(Clone, Debug)]
pub struct Standardized {
    pub link: StandardLink,
    pub log: MoveLog,
    pub input: LinkState,
    pub state: LinkState,
}

/// Standardizes an all-positive, all-tricolored, transitive colored braid.
pub fn standardize(cb: &ColoredBraid, variant: Variant) -> Result<Standardized, RewriteError> {
    let input = LinkState::new(cb.clone());
    let mut rw = Rewriter::new(input.clone());
    run_standardize(&mut rw, variant)?;
    let (state, log) = rw.finish();
    Ok(Standardized {
        link: StandardLink::from_state(&state, variant)?,
        log,
        input,
        state,
    })
}

/// Tricolor repair, positivity and standardization in one journal.
pub fn normalize(cb: &ColoredBraid, variant: Variant) -> Result<Standardized, RewriteError> {
    let input = LinkState::new(cb.clone());
    let mut rw = Rewriter::new(input.clone());
    run_tricolored(&mut rw)?;
    run_positive(&mut rw)?;
    run_standardize(&mut rw, variant)?;
    let (state, log) = rw.finish();
    Ok(Standardized {
        link: StandardLink::from_state(&state, variant)?,
        log,
        input,
        state,
    })
}

/// Checks the journal of a standardization: the checkpoint entry saw only
/// tricolored horizontal crossings, and every elimination was tricolored.
pub fn audit_log(log: &MoveLog) -> Result<(), RewriteError> {
    let checkpoints: Vec<&MoveEntry> = log.entries_for("horizontal-checkpoint").collect();
    let [cp] = checkpoints[..] else {
        return Err(RewriteError::Audit(format!("{} checkpoint entries", checkpoints.len())));
    };
    let (seen, total) = cp
        .evidence
        .strip_prefix("tricolored=")
        .and_then(|r| r.split_once('/'))
        .ok_or_else(|| RewriteError::Audit(cp.evidence.clone()))?;
    if seen != total {
        return Err(RewriteError::Audit(format!("checkpoint {seen}/{total}")));
    }
    let eliminations: Vec<&MoveEntry> = log.entries_for("eliminate-horizontal").collect();
    if eliminations.len().to_string() != total {
        return Err(RewriteError::Audit(format!(
            "{} eliminations for {total} horizontal crossings",
            eliminations.len()
        )));
    }
    for e in eliminations {
        let colors = e
            .evidence
            .strip_prefix("colors=")
            .and_then(|r| r.split(',').next())
            .ok_or_else(|| RewriteError::Audit(e.evidence.clone()))?;
        let distinct: std::collections::BTreeSet<char> = colors.chars().collect();
        if distinct.len() != 3 {
            return Err(RewriteError::Audit(format!("elimination with colors {colors}")));
        }
    }
    Ok(())
}

/// Applies the next move of a plan without journaling; used by callers that
/// want to test a single move.
pub fn try_move(state: &LinkState, mv: Move) -> Result<LinkState, RewriteError> {
    apply_move(state, mv).map(|a| a.state)
}
