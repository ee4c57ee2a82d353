//! Fox-colored closed braids.

mod braid;
mod color;
mod colored;

use thiserror::Error;

pub use braid::{BraidWord, Letter};
pub use color::{color_string, Color};
pub use colored::{
    check_simple_transitive, enumerate_colorings, propagate_coloring, propagate_levels, step,
    ColoredBraid, Crossing, Representation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("missing `strands=N` header")]
    MissingHeader,
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("token {position}: malformed `{token}`")]
    MalformedToken { position: usize, token: String },
    #[error("token {position}: generator s{index} out of range for {strands} strands")]
    IndexOutOfRange { position: usize, index: usize, strands: usize },
    #[error("expected {expected} top colors, found {found}")]
    ColorCount { expected: usize, found: usize },
    #[error("missing `colors=` line")]
    MissingColors,
    #[error("color {position}: `{found}` is not one of R, Y, B")]
    BadColor { position: usize, found: char },
    #[error("unexpected trailing input `{0}`")]
    TrailingInput(String),
    #[error("closure violated: top {top}, bottom {bottom}")]
    ClosureViolation { top: String, bottom: String },
    #[error("stored levels disagree with propagation")]
    Inconsistent,
    #[error("crossing {crossing} violates the Wirtinger rule")]
    WirtingerViolation { crossing: usize },
}
