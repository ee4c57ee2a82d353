use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::DiagramError;
use crate::permcalc::Perm;

/// One braid generator `s_i` (positive) or `-s_i` (negative), `i` 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub positive: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter { index, positive: true }
    }

    pub fn neg(index: usize) -> Self {
        Letter { index, positive: false }
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "s{}", self.index)
        } else {
            write!(f, "-s{}", self.index)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::NoStrands);
        }
        for (pos, l) in letters.iter().enumerate() {
            if l.index == 0 || l.index >= strands {
                return Err(DiagramError::IndexOutOfRange {
                    position: pos + 1,
                    index: l.index,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses `strands=N` followed by tokens `sK` / `-sK`.
    ///
    /// Token positions in errors count from 0 for the header.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut tokens = text.split_whitespace();
        let header = tokens.next().ok_or(DiagramError::MissingHeader)?;
        let strands: usize = header
            .strip_prefix("strands=")
            .ok_or(DiagramError::MissingHeader)?
            .parse()
            .map_err(|_| DiagramError::MalformedToken {
                position: 0,
                token: header.to_string(),
            })?;
        if strands == 0 {
            return Err(DiagramError::NoStrands);
        }
        let mut letters = Vec::new();
        for (offset, tok) in tokens.enumerate() {
            let position = offset + 1;
            let (positive, body) = match tok.strip_prefix('-') {
                Some(rest) => (false, rest),
                None => (true, tok),
            };
            let index: usize = body
                .strip_prefix('s')
                .and_then(|d| d.parse().ok())
                .filter(|&i| i > 0)
                .ok_or_else(|| DiagramError::MalformedToken {
                    position,
                    token: tok.to_string(),
                })?;
            if index >= strands {
                return Err(DiagramError::IndexOutOfRange {
                    position,
                    index,
                    strands,
                });
            }
            letters.push(Letter { index, positive });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.positive)
    }

    /// Replaces `count` letters starting at `at` by `with`.
    pub fn splice(&self, at: usize, count: usize, with: &[Letter]) -> Result<Self, DiagramError> {
        let mut letters = self.letters.clone();
        letters.splice(at..at + count, with.iter().copied());
        BraidWord::new(self.strands, letters)
    }

    /// The permutation of strand positions: strand starting at position `j`
    /// ends at position `π(j)`.
    pub fn permutation(&self) -> Perm {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.index - 1, l.index);
        }
        // `at[p]` is the starting position of the strand now at `p`.
        let mut images = vec![0; self.strands];
        for (end, &start) in at.iter().enumerate() {
            images[start] = end + 1;
        }
        Perm::from_images(&images).expect("a braid induces a permutation")
    }

    /// Cycle partition of strand positions; one cycle per link component.
    pub fn closure_components(&self) -> Vec<Vec<usize>> {
        self.permutation().cycles()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands={}", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BraidWord::parse(s)
    }
}
