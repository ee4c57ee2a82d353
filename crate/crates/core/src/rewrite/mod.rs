//! Montesinos moves, isotopies and the standardization into horizontal,
//! vertical and special components.
//!
//! Every move acts on a [`LinkState`] and is journaled in a [`MoveLog`] with
//! hashes of the state before and after, so a log can be replayed and checked.

mod artin;
mod moves;
mod standard;
mod tangle;

use thiserror::Error;

use crate::diagram::DiagramError;

pub use artin::{braid_action, braid_equal, FreeWord};
pub use moves::{
    apply_move, replay, slide_replacement, Applied, CrossingStage, FlipSite, Incidence, LinkState,
    Move, MoveEntry, MoveLog, Peanut, Rewriter, Special,
};
pub use standard::{
    audit_log, make_positive, make_tricolored, montesinos_flip, normalize, standardize, try_move,
    Horizontal, HorizontalSource, StandardLink, Standardized, Variant, Vertical,
};
pub use tangle::{tangle_cover_certificate, TangleCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("a tangle boundary needs an even positive number of points, got {0}")]
    BoundarySize(usize),
    #[error("boundary colors {0} are inconsistent")]
    InconsistentBoundary(String),
    #[error("crossing {index} is monochromatic")]
    MonochromaticCrossing { index: usize },
    #[error("crossing {index} is negative")]
    NegativeCrossing { index: usize },
    #[error("the coloring uses a single color")]
    NotTransitive,
    #[error("bad move site {0}")]
    BadSite(String),
    #[error("move not allowed here: {0}")]
    StageMismatch(String),
    #[error("move at {index} changed the colors on the ball boundary")]
    BoundaryChanged { index: usize },
    #[error("ball cover not certified: {0}")]
    Uncertified(String),
    #[error("checkpoint failed: {tricolored} of {total} horizontal crossings tricolored")]
    CheckpointFailed { total: usize, tricolored: usize },
    #[error("both peanut templates used in one link")]
    MixedPeanuts,
    #[error("bad log line `{0}`")]
    BadLogLine(String),
    #[error("replay diverged at entry {entry}")]
    ReplayMismatch { entry: usize },
    #[error("bad standard link record: {0}")]
    BadStandardLink(String),
    #[error("unknown variant `{0}`")]
    BadVariant(String),
    #[error("log audit failed: {0}")]
    Audit(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
