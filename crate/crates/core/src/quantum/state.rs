use nalgebra::DMatrix;

use super::matrix::{normalize, CVector, ComplexMatrix, C64};
use super::QuantumError;
use crate::tolerance;

/// Orthogonal projection: Hermitian and idempotent.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionOp(ComplexMatrix);

impl ProjectionOp {
    pub fn new(m: ComplexMatrix) -> Result<Self, QuantumError> {
        if !m.is_hermitian(tolerance::STRUCTURAL) {
            return Err(QuantumError::NotHermitian);
        }
        let defect = (&(&m * &m) - &m).operator_norm();
        if defect > tolerance::STRUCTURAL {
            return Err(QuantumError::NotIdempotent(defect));
        }
        Ok(Self(m))
    }

    /// Rank-one projection onto the line through `v` (any nonzero length).
    pub fn onto(v: &CVector) -> Result<Self, QuantumError> {
        let u = normalize(v)?;
        Ok(Self(ComplexMatrix::outer(&u, &u)))
    }

    /// Projection onto the span of `vectors`, found by rank-revealing
    /// Gram-Schmidt with threshold [`tolerance::STRUCTURAL`].
    pub fn onto_span(dim: usize, vectors: &[CVector]) -> Result<Self, QuantumError> {
        let mut basis: Vec<CVector> = Vec::new();
        for v in vectors {
            if v.len() != dim {
                return Err(QuantumError::DimensionMismatch {
                    left: dim,
                    right: v.len(),
                });
            }
            let mut w = v.clone();
            // two passes for numerical stability
            for _ in 0..2 {
                for b in &basis {
                    let c = b.dotc(&w);
                    w -= b * c;
                }
            }
            let n = w.norm();
            if n > tolerance::STRUCTURAL * v.norm().max(1.0) {
                basis.push(w / C64::new(n, 0.0));
            }
        }
        Ok(Self::from_orthonormal(dim, &basis))
    }

    /// Sum of rank-one projectors onto already-orthonormal vectors.
    pub fn from_orthonormal(dim: usize, vectors: &[CVector]) -> Self {
        let m = vectors
            .iter()
            .fold(DMatrix::zeros(dim, dim), |acc, v| acc + v * v.adjoint());
        Self(ComplexMatrix::from_inner_unchecked(m))
    }

    pub fn zero(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn rank(&self) -> usize {
        self.0.trace().re.round().max(0.0) as usize
    }

    /// `1 − P`.
    pub fn complement(&self) -> Self {
        Self(&ComplexMatrix::identity(self.dim()) - &self.0)
    }

    /// Range inclusion `self ≤ other`, decided by `‖QP − P‖ ≤ 1e-9`.
    pub fn is_below(&self, other: &ProjectionOp) -> bool {
        (&(&other.0 * &self.0) - &self.0).operator_norm() <= tolerance::CONTAINMENT
    }

    pub fn approx_eq(&self, other: &ProjectionOp) -> bool {
        (&self.0 - &other.0).operator_norm() <= tolerance::CONTAINMENT
    }

    /// Orthonormal basis of the range.
    pub fn range_basis(&self) -> Vec<CVector> {
        let eig = self.0.eigh();
        eig.values
            .iter()
            .zip(eig.vectors)
            .filter(|(v, _)| **v > 0.5)
            .map(|(_, v)| v)
            .collect()
    }
}

/// Density operator: positive semidefinite with unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator(ComplexMatrix);

impl DensityOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self, QuantumError> {
        if !m.is_hermitian(tolerance::ARITHMETIC) {
            return Err(QuantumError::NotHermitian);
        }
        let tr = m.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tolerance::ARITHMETIC {
            return Err(QuantumError::NotDensity(format!("trace {tr}")));
        }
        let min = m.eigh().values[0];
        if min < -tolerance::STRUCTURAL {
            return Err(QuantumError::NotDensity(format!("eigenvalue {min}")));
        }
        Ok(Self(m))
    }

    pub fn pure(v: &CVector) -> Result<Self, QuantumError> {
        let u = normalize(v)?;
        Ok(Self(ComplexMatrix::outer(&u, &u)))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self(ComplexMatrix::identity(n).scale_real(1.0 / n as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `Tr(ρA)` for a Hermitian `A`.
    pub fn expectation(&self, a: &ComplexMatrix) -> Result<f64, QuantumError> {
        if a.dim() != self.dim() {
            return Err(QuantumError::DimensionMismatch {
                left: self.dim(),
                right: a.dim(),
            });
        }
        Ok((self.0.as_matrix() * a.as_matrix()).trace().re)
    }

    /// Rescale a positive operator to unit trace after symmetrizing.
    fn normalized_from(m: ComplexMatrix) -> Result<Self, QuantumError> {
        let h = m.hermitian_part();
        let tr = h.trace().re;
        if tr <= tolerance::CONDITIONING {
            return Err(QuantumError::ZeroProbability(tr));
        }
        Ok(Self(h.scale_real(1.0 / tr)))
    }
}

/// Born probability `Tr(ρP)`, clamped into `[0, 1]`.
pub fn born_probability(rho: &DensityOperator, p: &ProjectionOp) -> Result<f64, QuantumError> {
    let v = rho.expectation(p.matrix())?;
    Ok(v.clamp(0.0, 1.0))
}

/// Projection postulate: `PρP / Tr(ρP)`.
pub fn collapse(rho: &DensityOperator, p: &ProjectionOp) -> Result<DensityOperator, QuantumError> {
    let prob = born_probability(rho, p)?;
    if prob <= tolerance::CONDITIONING {
        return Err(QuantumError::ZeroProbability(prob));
    }
    let m = p.matrix() * &(rho.matrix() * p.matrix());
    DensityOperator::normalized_from(m)
}
