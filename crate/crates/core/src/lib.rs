//! Coset codings of expansive group automorphisms.
//!
//! Finite groups and automorphisms ([`group`]) are coded by cosets of a
//! subgroup into vertex shifts ([`shift`]). Group shifts ([`group_shift`])
//! are reduced to a product of full shifts and a permutation
//! ([`decompose`]), with sliding block codes as a checkable certificate.
//! Countable-state graphs from non-compact examples are analysed in
//! [`wandering`]. [`spec_file`], [`report`] and [`dot`] form the user
//! surface shared with the command-line tool.

pub mod decompose;
pub mod dot;
pub mod gallery;
pub mod group;
pub mod group_shift;
pub mod report;
pub mod sample;
pub mod shift;
pub mod spec_file;
pub mod wandering;

use thiserror::Error;

pub use decompose::{decompose, verify_certificate, DecompositionCertificate, Limits};
pub use group::{FiniteGroup, GroupAutomorphism, Subgroup};
pub use group_shift::{code_finite_system, validate_group_shift, CodedSystem, GroupShiftModel};
pub use report::{run, Command, Format, RunOptions, RunReport, Status};
pub use shift::{block_entropy, VertexShift, Word};
pub use spec_file::{parse_spec, SpecFile};
pub use wandering::{GeneratedGraph, MatrixSystem, RankCertificate};

/// Any error raised by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] group::GroupError),
    #[error(transparent)]
    Shift(#[from] shift::ShiftError),
    #[error(transparent)]
    GroupShift(#[from] group_shift::GroupShiftError),
    #[error(transparent)]
    Decompose(#[from] decompose::DecomposeError),
    #[error(transparent)]
    Wandering(#[from] wandering::WanderingError),
    #[error(transparent)]
    Spec(#[from] spec_file::SpecError),
    #[error("no section for `{command}`{}", .target.as_ref().map(|t| format!(" named `{t}`")).unwrap_or_default())]
    NoTarget { command: String, target: Option<String> },
    #[error("`{command}` does not apply to {kind} section `{name}`")]
    WrongKind {
        command: String,
        name: String,
        kind: &'static str,
    },
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
