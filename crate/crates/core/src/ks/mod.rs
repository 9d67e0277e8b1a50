//! Kochen-Specker colorings of finite ray sets.
//!
//! A coloring assigns 0 or 1 to every ray so that each orthogonal basis
//! holds exactly one 1 and each remaining orthogonal pair at most one 1.

mod parity;
mod search;
mod structure;

pub use parity::{cabello_parity_witness, ParityReport};
pub use search::{
    count_colorings, count_problem, search_coloring, search_problem, Coloring,
    ExhaustionCertificate, SearchOutcome,
};
pub use structure::{build_orth_structure, complete_pairs_to_triads, ColoringProblem, OrthStructure};

use thiserror::Error;

use crate::exact::GeometryError;

pub(crate) type Mask = u128;

/// Largest instance the bit-set search handles.
pub const MAX_VECTORS: usize = 128;
/// Largest instance accepted by [`count_colorings`].
pub const COUNT_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KsError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("vectors `{first}` and `{second}` span the same ray")]
    DuplicateRay { first: String, second: String },
    #[error("{count} vectors exceed the limit of {limit}")]
    TooManyVectors { count: usize, limit: usize },
    #[error("vertex index {index} out of range for {vertex_count} vertices")]
    IndexOutOfRange { index: usize, vertex_count: usize },
    #[error("vertex {0} repeated within one constraint")]
    RepeatedIndex(usize),
    #[error("empty basis")]
    EmptyBasis,
    #[error("parity argument not applicable: {0}")]
    NotApplicable(String),
}
