use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::artin::braid_equal;
use super::tangle::tangle_cover_certificate;
use super::RewriteError;
use crate::diagram::{color_string, Color, ColoredBraid, Letter};

/// How far the standardization has processed a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossingStage {
    /// Still an ordinary braid crossing.
    Braid,
    /// Replaced by a small circle linking the two braid strands.
    Circle,
    /// The small circle split into three components.
    Split,
    /// The circle is a horizontal component, its two partners are vertical.
    Absorbed,
}

/// Which side of the peanut template is used for special components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Peanut {
    P,
    Q,
}

impl fmt::Display for Peanut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Peanut::P => "P",
            Peanut::Q => "Q",
        })
    }
}

/// A crossing between a vertical and a horizontal component.
///
/// The horizontal component passes over; the vertical one changes color from
/// `under_in` to `under_out`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub vertical: usize,
    pub horizontal: usize,
    pub over: Color,
    pub under_in: Color,
    pub under_out: Color,
}

impl Incidence {
    fn new(vertical: usize, horizontal: usize, over: Color, under_in: Color) -> Self {
        Incidence {
            vertical,
            horizontal,
            over,
            under_in,
            under_out: Color::conj(over, under_in),
        }
    }

    pub fn is_tricolored(&self) -> bool {
        self.over != self.under_in
    }

    pub fn colors(&self) -> String {
        color_string(&[self.over, self.under_in, self.under_out])
    }
}

/// A horizontal crossing that has been traded for a vertical crossing and a
/// special component inside a peanut ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Special {
    pub incidence: Incidence,
    pub peanut: Peanut,
}

/// The full state rewritten by moves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkState {
    pub braid: ColoredBraid,
    pub stages: Vec<CrossingStage>,
    /// Number of horizontal crossings seen at the checkpoint, once passed.
    pub checkpoint: Option<usize>,
    pub specials: Vec<Special>,
}

impl LinkState {
    pub fn new(braid: ColoredBraid) -> Self {
        let stages = vec![CrossingStage::Braid; braid.len()];
        LinkState {
            braid,
            stages,
            checkpoint: None,
            specials: Vec::new(),
        }
    }

    pub fn serialize(&self) -> String {
        serde_json::to_string(self).expect("link state serializes")
    }

    /// First 16 hex digits of the SHA-256 of the serialized state.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.serialize().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    fn braid_only(&self) -> bool {
        self.stages.iter().all(|s| *s == CrossingStage::Braid) && self.checkpoint.is_none()
    }

    /// All vertical/horizontal incidences created by absorbed crossings.
    pub fn incidences(&self) -> Vec<Incidence> {
        let s = self.braid.strands();
        let mut out = Vec::new();
        for (k, stage) in self.stages.iter().enumerate() {
            if *stage != CrossingStage::Absorbed {
                continue;
            }
            let c = self.braid.crossing(k);
            let p = c.letter.index - 1;
            let (o, u, w) = (c.over, c.under_in, c.under_out);
            let circle = s + k;
            out.push(Incidence::new(2 * k, p, o, u));
            out.push(Incidence::new(2 * k, circle, w, u));
            out.push(Incidence::new(2 * k + 1, p + 1, u, o));
            out.push(Incidence::new(2 * k + 1, circle, w, o));
        }
        out
    }

    /// Incidences not yet eliminated.
    pub fn horizontal_crossings(&self) -> Vec<Incidence> {
        self.incidences()
            .into_iter()
            .filter(|i| {
                !self
                    .specials
                    .iter()
                    .any(|sp| sp.incidence.vertical == i.vertical && sp.incidence.horizontal == i.horizontal)
            })
            .collect()
    }

    pub fn horizontal_count(&self) -> usize {
        self.braid.strands()
            + self
                .stages
                .iter()
                .filter(|s| **s == CrossingStage::Absorbed)
                .count()
    }

    pub fn vertical_count(&self) -> usize {
        2 * self
            .stages
            .iter()
            .filter(|s| matches!(s, CrossingStage::Split | CrossingStage::Absorbed))
            .count()
    }
}

/// Where a Montesinos flip acts: one letter, or a pair of equal letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSite {
    pub index: usize,
    pub span: usize,
}

impl FlipSite {
    pub fn single(index: usize) -> Self {
        FlipSite { index, span: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    Flip(FlipSite),
    Slide { index: usize },
    CrossingToCircle { crossing: usize },
    TripleSplit { crossing: usize },
    AbsorbCircle { crossing: usize },
    Checkpoint,
    Eliminate { vertical: usize, horizontal: usize, peanut: Peanut },
}

impl Move {
    pub fn template(&self) -> &'static str {
        match self {
            Move::Flip(_) => "montesinos-flip",
            Move::Slide { .. } => "tricolor-slide",
            Move::CrossingToCircle { .. } => "crossing-to-circle",
            Move::TripleSplit { .. } => "triple-split",
            Move::AbsorbCircle { .. } => "absorb-circle",
            Move::Checkpoint => "horizontal-checkpoint",
            Move::Eliminate { .. } => "eliminate-horizontal",
        }
    }

    pub fn site(&self) -> String {
        match *self {
            Move::Flip(FlipSite { index, span }) => format!("index={index},span={span}"),
            Move::Slide { index } => format!("index={index}"),
            Move::CrossingToCircle { crossing }
            | Move::TripleSplit { crossing }
            | Move::AbsorbCircle { crossing } => format!("crossing={crossing}"),
            Move::Checkpoint => "all".to_string(),
            Move::Eliminate { vertical, horizontal, peanut } => {
                format!("v={vertical},h={horizontal},peanut={peanut}")
            }
        }
    }

    pub fn parse(template: &str, site: &str) -> Result<Move, RewriteError> {
        let bad = || RewriteError::BadLogLine(format!("{template} {site}"));
        let field = |key: &str| -> Result<&str, RewriteError> {
            site.split(',')
                .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                .ok_or_else(bad)
        };
        let num = |key: &str| -> Result<usize, RewriteError> { field(key)?.parse().map_err(|_| bad()) };
        Ok(match template {
            "montesinos-flip" => Move::Flip(FlipSite {
                index: num("index")?,
                span: num("span")?,
            }),
            "tricolor-slide" => Move::Slide { index: num("index")? },
            "crossing-to-circle" => Move::CrossingToCircle { crossing: num("crossing")? },
            "triple-split" => Move::TripleSplit { crossing: num("crossing")? },
            "absorb-circle" => Move::AbsorbCircle { crossing: num("crossing")? },
            "horizontal-checkpoint" if site == "all" => Move::Checkpoint,
            "eliminate-horizontal" => Move::Eliminate {
                vertical: num("v")?,
                horizontal: num("h")?,
                peanut: match field("peanut")? {
                    "P" => Peanut::P,
                    "Q" => Peanut::Q,
                    _ => return Err(bad()),
                },
            },
            _ => return Err(bad()),
        })
    }
}

/// Result of a move: the new state, and a short evidence string.
#[derive(Clone, Debug)]
pub struct Applied {
    pub state: LinkState,
    pub evidence: String,
    /// For flips, the site that undoes this flip.
    pub inverse_site: Option<FlipSite>,
}

/// Replaces `count` letters at `at` and re-propagates, checking that the
/// colors on the boundary of the modified ball are unchanged.
fn splice_braid(
    braid: &ColoredBraid,
    at: usize,
    count: usize,
    with: &[Letter],
) -> Result<ColoredBraid, RewriteError> {
    let word = braid.word().splice(at, count, with)?;
    let out = ColoredBraid::propagate(word, braid.top_colors())?;
    if out.levels()[at] != braid.levels()[at] || out.levels()[at + with.len()] != braid.levels()[at + count] {
        return Err(RewriteError::BoundaryChanged { index: at });
    }
    for k in at..at + with.len() {
        if !out.is_tricolored(k) {
            return Err(RewriteError::Internal(format!(
                "replacement at {at} leaves crossing {k} monochromatic"
            )));
        }
    }
    Ok(out)
}

fn flip(state: &LinkState, site: FlipSite) -> Result<Applied, RewriteError> {
    if !state.braid_only() {
        return Err(RewriteError::StageMismatch("flip after standardization began".into()));
    }
    let braid = &state.braid;
    let FlipSite { index, span } = site;
    if index + span > braid.len() || !(span == 1 || span == 2) {
        return Err(RewriteError::BadSite(format!("{site:?}")));
    }
    let letter = braid.word().letters()[index];
    if !braid.is_tricolored(index) {
        return Err(RewriteError::MonochromaticCrossing { index });
    }
    let (replacement, inverse_span) = if span == 1 {
        (vec![letter.inverse(); 2], 2)
    } else {
        if braid.word().letters()[index + 1] != letter {
            return Err(RewriteError::BadSite(format!("{site:?}: letters differ")));
        }
        (vec![letter.inverse()], 1)
    };
    let out = splice_braid(braid, index, span, &replacement)?;
    let p = letter.index - 1;
    let (top, bottom) = (&braid.levels()[index], &braid.levels()[index + span]);
    let cert = tangle_cover_certificate(&[top[p], top[p + 1], bottom[p], bottom[p + 1]])?;
    if !cert.certified {
        return Err(RewriteError::Uncertified(cert.summary()));
    }
    Ok(Applied {
        state: LinkState::new(out),
        evidence: format!("chi={}", cert.euler_characteristic),
        inverse_site: Some(FlipSite { index, span: inverse_span }),
    })
}

/// The braid `U·T·U⁻¹` replacing a monochromatic crossing at `index`.
pub fn slide_replacement(braid: &ColoredBraid, index: usize) -> Result<Vec<Letter>, RewriteError> {
    let letter = braid.word().letters()[index];
    let level = &braid.levels()[index];
    let i = letter.index;
    let p = i - 1;
    let color = level[p];
    let right = (p + 2..level.len()).find(|&q| level[q] != color);
    let left = (0..p).rev().find(|&q| level[q] != color);
    let use_right = match (right, left) {
        (Some(r), Some(l)) => r - (p + 1) <= p - l,
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (None, None) => return Err(RewriteError::NotTransitive),
    };
    let sign = |l: Letter, positive: bool| if positive { l } else { l.inverse() };
    let (transport, helper): (Vec<Letter>, usize) = if use_right {
        let q = right.expect("right position") + 1;
        ((i + 2..q).rev().map(Letter::pos).collect(), i + 1)
    } else {
        let q = left.expect("left position") + 1;
        ((q..i - 1).map(Letter::pos).collect(), i - 1)
    };
    let core = [
        Letter::neg(helper),
        Letter::pos(i),
        Letter::pos(helper),
        Letter::pos(i),
        Letter::neg(helper),
    ];
    let core: Vec<Letter> = if letter.positive {
        core.to_vec()
    } else {
        core.iter().rev().map(|l| l.inverse()).collect()
    };
    let mut out = transport.clone();
    out.extend(core);
    out.extend(transport.iter().rev().map(|l| sign(*l, false)));
    Ok(out)
}

fn slide(state: &LinkState, index: usize) -> Result<Applied, RewriteError> {
    if !state.braid_only() {
        return Err(RewriteError::StageMismatch("slide after standardization began".into()));
    }
    let braid = &state.braid;
    if index >= braid.len() {
        return Err(RewriteError::BadSite(format!("index={index}")));
    }
    if braid.is_tricolored(index) {
        return Err(RewriteError::BadSite(format!("crossing {index} is already tricolored")));
    }
    let replacement = slide_replacement(braid, index)?;
    let letter = braid.word().letters()[index];
    if !braid_equal(braid.strands(), &replacement, &[letter]) {
        return Err(RewriteError::Internal(format!("slide at {index} is not an isotopy")));
    }
    let out = splice_braid(braid, index, 1, &replacement)?;
    Ok(Applied {
        state: LinkState::new(out),
        evidence: format!("isotopy=artin,letters={}", replacement.len()),
        inverse_site: None,
    })
}

fn advance(
    state: &LinkState,
    crossing: usize,
    from: CrossingStage,
    to: CrossingStage,
    with_ball: bool,
) -> Result<Applied, RewriteError> {
    if state.checkpoint.is_some() {
        return Err(RewriteError::StageMismatch("crossing moves after checkpoint".into()));
    }
    match state.stages.get(crossing) {
        Some(stage) if *stage == from => {}
        Some(stage) => {
            return Err(RewriteError::StageMismatch(format!(
                "crossing {crossing} is at {stage:?}, expected {from:?}"
            )))
        }
        None => return Err(RewriteError::BadSite(format!("crossing={crossing}"))),
    }
    let c = state.braid.crossing(crossing);
    if !c.letter.positive {
        return Err(RewriteError::NegativeCrossing { index: crossing });
    }
    if !c.is_tricolored() {
        return Err(RewriteError::MonochromaticCrossing { index: crossing });
    }
    let mut evidence = String::from("ball=none");
    if with_ball {
        let cert = tangle_cover_certificate(&[c.over, c.under_in, c.under_out, c.over])?;
        if !cert.certified {
            return Err(RewriteError::Uncertified(cert.summary()));
        }
        evidence = format!("chi={}", cert.euler_characteristic);
    }
    let mut next = state.clone();
    next.stages[crossing] = to;
    Ok(Applied {
        state: next,
        evidence,
        inverse_site: None,
    })
}

fn checkpoint(state: &LinkState) -> Result<Applied, RewriteError> {
    if state.checkpoint.is_some() {
        return Err(RewriteError::StageMismatch("checkpoint passed twice".into()));
    }
    if let Some(k) = state.stages.iter().position(|s| *s != CrossingStage::Absorbed) {
        return Err(RewriteError::StageMismatch(format!("crossing {k} not absorbed")));
    }
    let crossings = state.horizontal_crossings();
    let tricolored = crossings.iter().filter(|i| i.is_tricolored()).count();
    if tricolored != crossings.len() {
        return Err(RewriteError::CheckpointFailed {
            total: crossings.len(),
            tricolored,
        });
    }
    let mut next = state.clone();
    next.checkpoint = Some(crossings.len());
    Ok(Applied {
        state: next,
        evidence: format!("tricolored={}/{}", tricolored, crossings.len()),
        inverse_site: None,
    })
}

fn eliminate(state: &LinkState, vertical: usize, horizontal: usize, peanut: Peanut) -> Result<Applied, RewriteError> {
    if state.checkpoint.is_none() {
        return Err(RewriteError::StageMismatch("elimination before checkpoint".into()));
    }
    let incidence = state
        .horizontal_crossings()
        .into_iter()
        .find(|i| i.vertical == vertical && i.horizontal == horizontal)
        .ok_or_else(|| RewriteError::BadSite(format!("v={vertical},h={horizontal}")))?;
    if let Some(sp) = state.specials.first() {
        if sp.peanut != peanut {
            return Err(RewriteError::MixedPeanuts);
        }
    }
    let cert = tangle_cover_certificate(&[
        incidence.over,
        incidence.under_in,
        incidence.under_out,
        incidence.over,
    ])?;
    if !cert.certified {
        return Err(RewriteError::Uncertified(cert.summary()));
    }
    let mut next = state.clone();
    next.specials.push(Special { incidence, peanut });
    Ok(Applied {
        state: next,
        evidence: format!("colors={},chi={}", incidence.colors(), cert.euler_characteristic),
        inverse_site: None,
    })
}

pub fn apply_move(state: &LinkState, mv: Move) -> Result<Applied, RewriteError> {
    match mv {
        Move::Flip(site) => flip(state, site),
        Move::Slide { index } => slide(state, index),
        Move::CrossingToCircle { crossing } => {
            if !state.braid.representation().transitive {
                return Err(RewriteError::NotTransitive);
            }
            advance(state, crossing, CrossingStage::Braid, CrossingStage::Circle, true)
        }
        Move::TripleSplit { crossing } => {
            advance(state, crossing, CrossingStage::Circle, CrossingStage::Split, true)
        }
        Move::AbsorbCircle { crossing } => {
            advance(state, crossing, CrossingStage::Split, CrossingStage::Absorbed, false)
        }
        Move::Checkpoint => checkpoint(state),
        Move::Eliminate { vertical, horizontal, peanut } => eliminate(state, vertical, horizontal, peanut),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveEntry {
    pub template: String,
    pub site: String,
    pub before: String,
    pub after: String,
    pub evidence: String,
}

impl fmt::Display for MoveEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            self.template, self.site, self.before, self.after, self.evidence
        )
    }
}

/// Line-oriented journal of applied moves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveLog {
    pub entries: Vec<MoveEntry>,
}

impl MoveLog {
    pub fn new() -> Self {
        MoveLog::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn extend(&mut self, other: MoveLog) {
        self.entries.extend(other.entries);
    }

    pub fn entries_for<'a>(&'a self, template: &'a str) -> impl Iterator<Item = &'a MoveEntry> + 'a {
        self.entries.iter().filter(move |e| e.template == template)
    }

    pub fn to_text(&self) -> String {
        self.entries.iter().map(|e| format!("{e}\n")).collect()
    }

    pub fn from_text(text: &str) -> Result<Self, RewriteError> {
        let mut entries = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [template, site, before, after, evidence] = fields[..] else {
                return Err(RewriteError::BadLogLine(line.to_string()));
            };
            Move::parse(template, site)?;
            entries.push(MoveEntry {
                template: template.to_string(),
                site: site.to_string(),
                before: before.to_string(),
                after: after.to_string(),
                evidence: evidence.to_string(),
            });
        }
        Ok(MoveLog { entries })
    }
}

/// Applies moves one after another, journaling each.
#[derive(Clone, Debug)]
pub struct Rewriter {
    state: LinkState,
    log: MoveLog,
}

impl Rewriter {
    pub fn new(state: LinkState) -> Self {
        Rewriter {
            state,
            log: MoveLog::new(),
        }
    }

    pub fn state(&self) -> &LinkState {
        &self.state
    }

    pub fn apply(&mut self, mv: Move) -> Result<Applied, RewriteError> {
        let applied = apply_move(&self.state, mv)?;
        self.log.entries.push(MoveEntry {
            template: mv.template().to_string(),
            site: mv.site(),
            before: self.state.hash(),
            after: applied.state.hash(),
            evidence: applied.evidence.clone(),
        });
        self.state = applied.state.clone();
        Ok(applied)
    }

    pub fn finish(self) -> (LinkState, MoveLog) {
        (self.state, self.log)
    }
}

/// Re-applies every logged move to `start`, checking both hashes of each
/// entry, and returns the final state.
pub fn replay(start: &LinkState, log: &MoveLog) -> Result<LinkState, RewriteError> {
    let mut state = start.clone();
    for (n, entry) in log.entries.iter().enumerate() {
        if state.hash() != entry.before {
            return Err(RewriteError::ReplayMismatch { entry: n });
        }
        let mv = Move::parse(&entry.template, &entry.site)?;
        state = apply_move(&state, mv)?.state;
        if state.hash() != entry.after {
            return Err(RewriteError::ReplayMismatch { entry: n });
        }
    }
    Ok(state)
}
