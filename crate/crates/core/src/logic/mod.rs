//! Quantum logic on subspaces, finite unions of subspaces, and the
//! context-function Heyting algebras over finite posets of abelian algebras.

mod lattice;
mod laws;
mod poset;
mod subspace;

use thiserror::Error;

use crate::quantum::QuantumError;

pub use lattice::{l2_ops, l3_ops, ContextFunction, ContextLattice, HeytingOps, Variant};
pub use laws::{check_heyting_laws, CheckMode, Law, LawFailure, LawReport, ENUMERATION_LIMIT};
pub use poset::{Context, ContextPoset};
pub use subspace::{
    l1_double_negation, popper_instance, ql_join, ql_meet, ql_ortho, DoubleNegation, PopperReport, Subspace,
    MAX_UNION,
};

#[derive(Debug, Error)]
pub enum LogicError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("union of {0} subspaces exceeds the limit of {max}", max = MAX_UNION)]
    UnionTooLarge(usize),
    #[error("context has no atoms")]
    EmptyContext,
    #[error("context has {0} atoms, at most 32 supported")]
    TooManyAtoms(usize),
    #[error("atoms of context {0} are not orthogonal projections summing to the identity")]
    NotAPartition(String),
    #[error("expected {expected} context values, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("value for context {0} uses atoms the context does not have")]
    InvalidValue(usize),
    #[error("monotonicity fails between context {coarse} and its refinement {fine}")]
    NotMonotone { coarse: usize, fine: usize },
    #[error("more than {0} elements; use sampling")]
    TooManyElements(usize),
    #[error("unknown variant {0:?} (expected l2 or l3)")]
    UnknownVariant(String),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}
