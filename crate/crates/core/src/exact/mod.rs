//! Exact arithmetic in Q(√2, √3) and unnormalized direction vectors.
//!
//! Orthogonality and ray identity are decided exactly, so no tolerance
//! appears anywhere in this module.

mod scalar;
mod vector;
mod vector_set;

pub use scalar::{scalar_mul, QuadScalar};
pub use vector::{cross_product, inner_product, is_orthogonal, ExactVector, RationalPoint};
pub use vector_set::{BuiltinSet, VectorSet};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("vector `{0}` has no entries")]
    EmptyVector(String),
    #[error("vector `{0}` is the zero vector")]
    ZeroVector(String),
    #[error("cross product needs dimension 3, got {0}")]
    NotThreeDimensional(usize),
    #[error("cross product of parallel vectors `{left}` and `{right}`")]
    ParallelInputs { left: String, right: String },
    #[error("point is not on the unit sphere")]
    NotOnSphere,
    #[error("rational with zero denominator in vector `{0}`")]
    ZeroDenominator(String),
    #[error("coefficient does not fit the JSON integer range in vector `{0}`")]
    CoefficientOverflow(String),
    #[error("malformed vector set: {0}")]
    Malformed(String),
    #[error("unknown built-in vector set `{0}`")]
    UnknownSet(String),
}
