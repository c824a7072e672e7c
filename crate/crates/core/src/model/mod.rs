//! Instance and embedding model: exact half-unit geometry, validation,
//! costs, path lengths, and topology reshaping.

mod embedding;
mod geom;
mod instance;
mod normalize;
pub(crate) mod topology;

pub use embedding::{clamp_to_bbox, cost, extended_restrictions, path_lengths, Embedding};
pub(crate) use embedding::path_lengths_with;
pub use geom::{HalfPoint, Length, COORD_BOUND};
pub use instance::{
    validate_instance, Instance, PathLengths, Terminal, ValidationReport, Violation,
    ViolationKind,
};
pub use normalize::{normalize_topology, Normalized};

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ModelError {
    #[error("instance has no vertices")]
    Empty,
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("unknown id {0:?}")]
    UnknownId(String),
    #[error("root {0:?} is not a terminal")]
    RootNotTerminal(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("no embedding satisfies the limits")]
    Infeasible,
}
