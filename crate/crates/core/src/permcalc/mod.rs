//! Permutations, dihedral disk covers and branching-type bookkeeping.

mod branching;
mod disk;
mod perm;
mod regular;

use thiserror::Error;

pub use branching::{
    compose_branching, quotient_by_rotation, torus_modification, BranchComponent,
    BranchInventory, BranchingType, ComponentTag, Orbit,
};
pub use disk::{boundary_is_k_cycle, dihedral_rep, euler_char_disk_cover, DiskRep};
pub use perm::{generated_subgroup, is_transitive, Perm};
pub use regular::{
    pseudo_branch_double_cover, regular_representation, sigma3_elements, SignDatum,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image table {0:?} is not a bijection")]
    NotBijective(Vec<usize>),
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cycles are not disjoint")]
    OverlappingCycles,
    #[error("cannot parse {0:?}")]
    Syntax(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{0} is not an involution")]
    NotInvolution(String),
    #[error("a dihedral cover needs at least 2 sheets, got {0}")]
    TooFewSheets(usize),
    #[error("expected a permutation of degree 3, got degree {0}")]
    NotDegreeThree(usize),
    #[error("duplicate component label {0}")]
    DuplicateLabel(String),
    #[error("unknown component label {0}")]
    MissingLabel(String),
    #[error("component {label} has local degrees summing to {sum}, covering degree is {degree}")]
    DegreeSum { label: String, sum: u64, degree: u64 },
    #[error("axis {label} has type {found}, expected {{{expected}}}")]
    AxisType { label: String, found: String, expected: u32 },
    #[error("rotation of order {0} has no quotient to take")]
    TrivialRotation(u32),
    #[error("inconsistent orbit for {image}: {reason}")]
    InconsistentOrbit { image: String, reason: String },
    #[error("inventory has no branch or pseudo tags")]
    NoBranchTags,
}
