//! Combinatorial calculus for 3-fold simple branched coverings of S³.
//!
//! The crate is organised around the stages of the covering tower
//!
//! ```text
//! M³ --p (3)--> S³ --f (m)--> S³ --g (n)--> S³ --h (3)--> S³ --t (27)--> S³
//! ```
//!
//! * [`diagram`] holds Fox-colored closed braids, the combinatorial stand-in for
//!   the simple 3-fold covering `p`.
//! * [`rewrite`] normalises a colored braid by Montesinos moves and isotopies into
//!   a [`rewrite::StandardLink`] made of horizontal, vertical and special
//!   components, logging every move with a checkable certificate.
//! * [`permcalc`] carries the permutation side: dihedral disk covers, branching
//!   types, quotients by rotations and the regular representation of Σ₃.
//! * [`crystal`] is an exact integer engine for the two crystallographic groups
//!   generated by half-turns whose quotient map gives the 27-fold map `t`.
//! * [`pipeline`] composes everything into a [`pipeline::Tower`] and a
//!   [`pipeline::Certificate`].
//!
//! Permutations compose left to right throughout: `p.then(&q)` applies `p`
//! first. In a positive generator `s_i` the strand at position `i` crosses over
//! the strand at position `i + 1`.

pub mod crystal;
pub mod diagram;
pub mod permcalc;
pub mod pipeline;
pub mod rewrite;

pub use diagram::{BraidWord, Color, ColoredBraid};
pub use permcalc::{BranchInventory, BranchingType, Perm};
pub use pipeline::{Certificate, Tower};
pub use rewrite::{MoveLog, StandardLink, Variant};
