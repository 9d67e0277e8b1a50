//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Matrices are at most 16×16. All tolerances come from [`crate::tolerance`].

mod generator;
mod matrix;
mod random;
mod reconstruct;
mod spin;
mod state;

pub use generator::{generator_alphas, h_scalar, ks_single_generator, SingleGenerator, MAX_GENERATED};
pub use matrix::{
    check_orthonormal, normalize, real_vector, tensor, tensor_vector, CVector, ComplexMatrix,
    HermitianEigen, C64,
};
pub use random::{random_basis, random_density, random_pure_vector, random_unitary};
pub use reconstruct::{dispersion_probe, f_observable, g_observable, reconstruct_state};
pub use spin::{pauli_x, pauli_y, pauli_z, singlet, spin_operator, SpinObservable};
pub use state::{born_probability, collapse, DensityOperator, ProjectionOp};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantumError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {0} outside 1..=16")]
    TooLarge(usize),
    #[error("dimension {0} too small")]
    TooSmall(usize),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("matrix is not idempotent (defect {0:e})")]
    NotIdempotent(f64),
    #[error("not a density operator: {0}")]
    NotDensity(String),
    #[error("cannot condition on an outcome of probability {0:e}")]
    ZeroProbability(f64),
    #[error("zero vector")]
    ZeroVector,
    #[error("vectors are not an orthonormal basis")]
    NotOrthonormal,
    #[error("projections {first} and {second} are not orthogonal (overlap {overlap:e})")]
    NotOrthogonal { first: usize, second: usize, overlap: f64 },
    #[error("single generator supports 1..=5 projections, got {0}")]
    GeneratorSize(usize),
    #[error("expectation oracle is inconsistent: {0}")]
    InconsistentOracle(String),
}
