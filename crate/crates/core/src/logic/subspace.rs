use serde::Serialize;

use super::LogicError;
use crate::quantum::{real_vector, CVector, DensityOperator, ProjectionOp};
use crate::tolerance;

/// A closed subspace, held as its orthogonal projection.
#[derive(Clone, Debug)]
pub struct Subspace(ProjectionOp);

impl Subspace {
    pub fn new(p: ProjectionOp) -> Self {
        Self(p)
    }

    pub fn span(dim: usize, vectors: &[CVector]) -> Result<Self, LogicError> {
        Ok(Self(ProjectionOp::onto_span(dim, vectors)?))
    }

    pub fn zero(dim: usize) -> Self {
        Self(ProjectionOp::zero(dim))
    }

    pub fn full(dim: usize) -> Self {
        Self(ProjectionOp::identity(dim))
    }

    pub fn projection(&self) -> &ProjectionOp {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn le(&self, other: &Subspace) -> bool {
        self.0.is_below(&other.0)
    }

    pub fn approx_eq(&self, other: &Subspace) -> bool {
        self.0.approx_eq(&other.0)
    }

    pub fn probability(&self, rho: &DensityOperator) -> Result<f64, LogicError> {
        Ok(rho.expectation(self.0.matrix())?)
    }

    fn check_dim(&self, other: &Subspace) -> Result<(), LogicError> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(LogicError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            })
        }
    }
}

/// Closed span of the two subspaces.
pub fn ql_join(a: &Subspace, b: &Subspace) -> Result<Subspace, LogicError> {
    a.check_dim(b)?;
    let mut vectors = a.0.range_basis();
    vectors.extend(b.0.range_basis());
    Subspace::span(a.dim(), &vectors)
}

/// Intersection, computed as the kernel of `(1 − P) + (1 − Q)`.
pub fn ql_meet(a: &Subspace, b: &Subspace) -> Result<Subspace, LogicError> {
    a.check_dim(b)?;
    let sum = a.0.complement().matrix() + b.0.complement().matrix();
    let eig = sum.eigh();
    let kernel: Vec<CVector> = eig
        .values
        .iter()
        .zip(eig.vectors)
        .filter(|(v, _)| v.abs() <= tolerance::CONTAINMENT)
        .map(|(_, v)| v)
        .collect();
    Ok(Subspace(ProjectionOp::from_orthonormal(a.dim(), &kernel)))
}

pub fn ql_ortho(a: &Subspace) -> Subspace {
    Subspace(a.0.complement())
}

/// Probabilities of both sides of the distributive law for `B = P_f`,
/// `f = (e1 + e2)/√2`, and `A = P_{e1}` in C².
#[derive(Clone, Debug, Serialize)]
pub struct PopperReport {
    /// Rank of `B ∧ (A ∨ ¬A)` and of `(B ∧ A) ∨ (B ∧ ¬A)`.
    pub lhs_rank: usize,
    pub rhs_rank: usize,
    pub distributive: bool,
    /// Probabilities in the state `e1`.
    pub lhs_probability_e1: f64,
    pub rhs_probability_e1: f64,
    /// Probabilities in the state `f`.
    pub lhs_probability_f: f64,
    pub rhs_probability_f: f64,
}

pub fn popper_instance() -> Result<PopperReport, LogicError> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e1 = real_vector(&[1.0, 0.0]);
    let f = real_vector(&[s, s]);
    let a = Subspace::new(ProjectionOp::onto(&e1)?);
    let b = Subspace::new(ProjectionOp::onto(&f)?);
    let lhs = ql_meet(&b, &ql_join(&a, &ql_ortho(&a))?)?;
    let rhs = ql_join(&ql_meet(&b, &a)?, &ql_meet(&b, &ql_ortho(&a))?)?;
    let state_e1 = DensityOperator::pure(&e1)?;
    let state_f = DensityOperator::pure(&f)?;
    Ok(PopperReport {
        lhs_rank: lhs.rank(),
        rhs_rank: rhs.rank(),
        distributive: lhs.approx_eq(&rhs),
        lhs_probability_e1: lhs.probability(&state_e1)?,
        rhs_probability_e1: rhs.probability(&state_e1)?,
        lhs_probability_f: lhs.probability(&state_f)?,
        rhs_probability_f: rhs.probability(&state_f)?,
    })
}

/// Maximum number of components in a finite union of subspaces.
pub const MAX_UNION: usize = 8;

#[derive(Clone, Debug)]
pub struct DoubleNegation {
    /// Smallest subspace containing the union.
    pub closure: Subspace,
    /// Whether the union already is that subspace, i.e. some component
    /// contains all the others.
    pub regular: bool,
}

/// `¬¬l` for a finite union `l` of subspaces of a `dim`-dimensional space.
pub fn l1_double_negation(dim: usize, components: &[Subspace]) -> Result<DoubleNegation, LogicError> {
    if components.len() > MAX_UNION {
        return Err(LogicError::UnionTooLarge(components.len()));
    }
    let mut closure = Subspace::zero(dim);
    for c in components {
        closure = ql_join(&closure, c)?;
    }
    let regular = components.is_empty() || components.iter().any(|c| c.approx_eq(&closure));
    Ok(DoubleNegation { closure, regular })
}
