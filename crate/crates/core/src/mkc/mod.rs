//! Finite-precision hidden-variable model over a family of totally
//! incompatible bases.

mod checks;
mod family;
mod nearest;
mod sequence;
mod valuation;

use thiserror::Error;

use crate::quantum::QuantumError;

pub use checks::{
    lambda_e_check, product_defect, valuation_frequency_test, FrequencyReport, JointStat,
    NeighbourhoodBasis, NeighbourhoodReport, ProjectionStat,
};
pub use family::{
    generate_anchored_family, generate_basis_family, min_commutator_norm, totally_incompatible,
    BasisFamily, FamilyElement, MAX_BASES, RESAMPLE_BUDGET,
};
pub use nearest::{continuity_checks, nearest_family_observable, ContinuityCheck, NearestObservable, OutcomeGroup};
pub use sequence::{simulate_sequence, OutcomeRow, SequenceStats, SurrogateInfo};
pub use valuation::{mkc_probability, sample_valuation, BornWeights, Valuation, ValuationSeed};

#[derive(Debug, Error)]
pub enum MkcError {
    #[error("dimension {0} is not supported (expected 2, 3 or 4)")]
    UnsupportedDimension(usize),
    #[error("{0} bases requested, at most {max} allowed", max = MAX_BASES)]
    TooManyBases(usize),
    #[error("{anchors} anchor lists for {bases} bases")]
    TooManyAnchors { anchors: usize, bases: usize },
    #[error("basis {0} is not orthonormal")]
    NotOrthonormal(usize),
    #[error("bases {first} and {second} share a commuting pair of projections")]
    Compatible { first: usize, second: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("projection is not in the Boolean algebra of any family basis")]
    NotInFamily,
    #[error("no totally incompatible candidate found for basis {basis}")]
    BudgetExhausted { basis: usize },
    #[error("anchor vectors are not orthonormal")]
    AnchorNotOrthonormal,
    #[error("observable is not Hermitian")]
    NotHermitian,
    #[error("family has no bases")]
    EmptyFamily,
    #[error("observable and its surrogate have different numbers of eigenvalues")]
    SpectrumMismatch,
    #[error("measurement program is empty")]
    EmptyProgram,
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}
