use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::braid::{BraidWord, Letter};
use super::color::{color_string, Color};
use super::DiagramError;
use crate::permcalc::{generated_subgroup, Perm};

/// The three colors meeting at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub letter: Letter,
    pub over: Color,
    pub under_in: Color,
    pub under_out: Color,
}

impl Crossing {
    pub fn is_tricolored(&self) -> bool {
        self.over != self.under_in
    }

    /// All equal or pairwise distinct.
    pub fn satisfies_wirtinger(&self) -> bool {
        let all_equal = self.over == self.under_in && self.under_in == self.under_out;
        let distinct = self.over != self.under_in
            && self.under_in != self.under_out
            && self.over != self.under_out;
        all_equal || distinct
    }
}

/// Pushes one level of colors through a crossing.
pub fn step(colors: &[Color], letter: Letter) -> (Vec<Color>, Crossing) {
    let p = letter.index - 1;
    let mut next = colors.to_vec();
    let crossing = if letter.positive {
        let (over, under) = (colors[p], colors[p + 1]);
        let out = Color::conj(over, under);
        next[p] = out;
        next[p + 1] = over;
        Crossing { letter, over, under_in: under, under_out: out }
    } else {
        let (over, under) = (colors[p + 1], colors[p]);
        let out = Color::conj(over, under);
        next[p] = over;
        next[p + 1] = out;
        Crossing { letter, over, under_in: under, under_out: out }
    };
    (next, crossing)
}

/// Colors at every level `0..=len` of the (open) braid.
pub fn propagate_levels(word: &BraidWord, top: &[Color]) -> Result<Vec<Vec<Color>>, DiagramError> {
    if top.len() != word.strands() {
        return Err(DiagramError::ColorCount {
            expected: word.strands(),
            found: top.len(),
        });
    }
    let mut levels = Vec::with_capacity(word.len() + 1);
    levels.push(top.to_vec());
    for &l in word.letters() {
        let (next, _) = step(levels.last().expect("nonempty"), l);
        levels.push(next);
    }
    Ok(levels)
}

/// A braid word with a coloring of its closure.
///
/// Colors are stored per level: `levels[k]` are the strand colors just above
/// letter `k`, and the last level equals the first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredBraid {
    word: BraidWord,
    levels: Vec<Vec<Color>>,
}

/// Image of the monodromy: the subgroup of Σ₃ generated by the colors used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub colors: BTreeSet<Color>,
    pub image_order: usize,
    pub transitive: bool,
}

impl Representation {
    pub fn of_colors(colors: BTreeSet<Color>) -> Self {
        let gens: Vec<Perm> = colors.iter().map(|c| c.transposition()).collect();
        let image_order = generated_subgroup(3, &gens).len();
        Representation {
            transitive: colors.len() >= 2,
            colors,
            image_order,
        }
    }
}

impl ColoredBraid {
    pub fn propagate(word: BraidWord, top: &[Color]) -> Result<Self, DiagramError> {
        let levels = propagate_levels(&word, top)?;
        let bottom = levels.last().expect("nonempty");
        if bottom.as_slice() != top {
            return Err(DiagramError::ClosureViolation {
                top: color_string(top),
                bottom: color_string(bottom),
            });
        }
        Ok(ColoredBraid { word, levels })
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn strands(&self) -> usize {
        self.word.strands()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn levels(&self) -> &[Vec<Color>] {
        &self.levels
    }

    pub fn top_colors(&self) -> &[Color] {
        &self.levels[0]
    }

    pub fn crossing(&self, k: usize) -> Crossing {
        step(&self.levels[k], self.word.letters()[k]).1
    }

    pub fn crossings(&self) -> Vec<Crossing> {
        (0..self.len()).map(|k| self.crossing(k)).collect()
    }

    pub fn is_tricolored(&self, k: usize) -> bool {
        self.crossing(k).is_tricolored()
    }

    pub fn all_tricolored(&self) -> bool {
        (0..self.len()).all(|k| self.is_tricolored(k))
    }

    /// Indices of crossings whose strands carry the same color.
    pub fn monochromatic_crossings(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| !self.is_tricolored(k)).collect()
    }

    /// Re-derives every level from the top and scans each crossing.
    pub fn check_valid(&self) -> Result<(), DiagramError> {
        let again = ColoredBraid::propagate(self.word.clone(), self.top_colors())?;
        if again.levels != self.levels {
            return Err(DiagramError::Inconsistent);
        }
        for (k, c) in self.crossings().iter().enumerate() {
            if !c.satisfies_wirtinger() {
                return Err(DiagramError::WirtingerViolation { crossing: k });
            }
        }
        Ok(())
    }

    pub fn colors_used(&self) -> BTreeSet<Color> {
        self.levels.iter().flatten().copied().collect()
    }

    pub fn representation(&self) -> Representation {
        Representation::of_colors(self.colors_used())
    }

    /// Two-line file form: the braid word, then `colors=...`.
    pub fn to_file_string(&self) -> String {
        format!("{}\ncolors={}\n", self.word, color_string(self.top_colors()))
    }

    pub fn from_file_str(text: &str) -> Result<Self, DiagramError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let word = BraidWord::parse(lines.next().ok_or(DiagramError::MissingHeader)?)?;
        let color_line = lines.next().ok_or(DiagramError::MissingColors)?;
        let listed = color_line
            .strip_prefix("colors=")
            .ok_or(DiagramError::MissingColors)?;
        let top = listed
            .chars()
            .enumerate()
            .map(|(i, ch)| Color::from_char(ch).ok_or(DiagramError::BadColor { position: i, found: ch }))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(extra) = lines.next() {
            return Err(DiagramError::TrailingInput(extra.to_string()));
        }
        ColoredBraid::propagate(word, &top)
    }
}

/// Free-function form of [`ColoredBraid::propagate`].
pub fn propagate_coloring(word: &BraidWord, top: &[Color]) -> Result<ColoredBraid, DiagramError> {
    ColoredBraid::propagate(word.clone(), top)
}

pub fn check_simple_transitive(cb: &ColoredBraid) -> Representation {
    cb.representation()
}

/// Propagates in place; on a closed coloring returns the colors met as a bit set.
fn closed_colors(word: &BraidWord, top: &[Color], colors: &mut Vec<Color>) -> Option<u8> {
    let bit = |c: Color| 1u8 << (c as u8);
    colors.clear();
    colors.extend_from_slice(top);
    let mut used = colors.iter().fold(0, |acc, &c| acc | bit(c));
    for l in word.letters() {
        let p = l.index - 1;
        let (over, under) = if l.positive { (colors[p], colors[p + 1]) } else { (colors[p + 1], colors[p]) };
        let out = Color::conj(over, under);
        used |= bit(out);
        if l.positive {
            colors[p] = out;
            colors[p + 1] = over;
        } else {
            colors[p] = over;
            colors[p + 1] = out;
        }
    }
    (colors[..] == *top).then_some(used)
}

/// Every transitive coloring of the closed braid, in lexicographic order of
/// top colors (`R < Y < B`).
pub fn enumerate_colorings(word: &BraidWord) -> Vec<ColoredBraid> {
    let s = word.strands();
    let mut out = Vec::new();
    let mut digits = vec![0usize; s];
    let (mut top, mut scratch) = (Vec::with_capacity(s), Vec::with_capacity(s));
    loop {
        top.clear();
        top.extend(digits.iter().map(|&d| Color::ALL[d]));
        if let Some(used) = closed_colors(word, &top, &mut scratch) {
            if used.count_ones() >= 2 {
                out.push(ColoredBraid::propagate(word.clone(), &top).expect("closure checked"));
            }
        }
        let mut pos = s;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < 3 {
                break;
            }
            digits[pos] = 0;
        }
    }
}
