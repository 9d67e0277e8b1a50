use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::QuantumError;
use crate::tolerance;

pub type C64 = Complex64;
pub type CVector = DVector<C64>;

/// Square complex matrix of dimension at most [`ComplexMatrix::MAX_DIM`].
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<CVector>,
}

impl ComplexMatrix {
    pub const MAX_DIM: usize = 16;

    pub fn new(m: DMatrix<C64>) -> Result<Self, QuantumError> {
        if m.nrows() != m.ncols() {
            return Err(QuantumError::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 || m.nrows() > Self::MAX_DIM {
            return Err(QuantumError::TooLarge(m.nrows()));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QuantumError::NonFinite);
        }
        Ok(Self(m))
    }

    /// Row-major entries.
    pub fn from_rows(n: usize, entries: &[C64]) -> Result<Self, QuantumError> {
        if entries.len() != n * n {
            return Err(QuantumError::NotSquare {
                rows: n,
                cols: entries.len() / n.max(1),
            });
        }
        Self::new(DMatrix::from_row_slice(n, n, entries))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, QuantumError> {
        let n = rows.len();
        let entries: Vec<C64> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| C64::new(x, 0.0)))
            .collect();
        Self::from_rows(n, &entries)
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    /// `u v†`.
    pub fn outer(u: &CVector, v: &CVector) -> Self {
        Self(u * v.adjoint())
    }

    pub(crate) fn from_inner_unchecked(m: DMatrix<C64>) -> Self {
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(&self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.0 * v
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0))
    }

    pub fn max_entry_distance(&self, other: &Self) -> f64 {
        (&self.0 - &other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_entry_distance(&self.adjoint()) <= tol
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        self.0.singular_values().iter().copied().fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    /// Eigendecomposition of the Hermitian part.
    pub fn eigh(&self) -> HermitianEigen {
        let eig = self.hermitian_part().0.symmetric_eigen();
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        HermitianEigen {
            values: order.iter().map(|&i| eig.eigenvalues[i]).collect(),
            vectors: order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect(),
        }
    }

    /// Distinct eigenvalues (ascending) with their spectral projectors.
    /// Eigenvalues within [`tolerance::EIGEN_GAP`] of their neighbour are grouped.
    pub fn spectral_decomposition(&self) -> Vec<(f64, ComplexMatrix)> {
        let eig = self.eigh();
        let mut groups: Vec<(Vec<f64>, Vec<CVector>)> = Vec::new();
        for (val, vec) in eig.values.into_iter().zip(eig.vectors) {
            match groups.last_mut() {
                Some((vals, vecs)) if val - vals[vals.len() - 1] <= tolerance::EIGEN_GAP => {
                    vals.push(val);
                    vecs.push(vec);
                }
                _ => groups.push((vec![val], vec![vec])),
            }
        }
        groups
            .into_iter()
            .map(|(vals, vecs)| {
                let mean = vals.iter().sum::<f64>() / vals.len() as f64;
                let n = vecs[0].len();
                let p = vecs
                    .iter()
                    .fold(DMatrix::zeros(n, n), |acc, v| acc + v * v.adjoint());
                (mean, ComplexMatrix(p))
            })
            .collect()
    }

    /// Real polynomial `Σ c_k X^k` evaluated by Horner's rule.
    pub fn polynomial(&self, coeffs: &[f64]) -> Self {
        let n = self.dim();
        let mut acc = DMatrix::<C64>::zeros(n, n);
        for &c in coeffs.iter().rev() {
            acc = &acc * &self.0 + DMatrix::<C64>::identity(n, n) * C64::new(c, 0.0);
        }
        Self(acc)
    }
}

impl Add<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Sub<ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 - rhs.0)
    }
}

impl Add<ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 + rhs.0)
    }
}

/// Kronecker product; `e_i ⊗ e_j` maps to coordinate `i·dim(B) + j`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, QuantumError> {
    ComplexMatrix::new(a.0.kronecker(&b.0))
}

pub fn tensor_vector(u: &CVector, v: &CVector) -> CVector {
    u.kronecker(v)
}

/// Normalized copy of `v`.
pub fn normalize(v: &CVector) -> Result<CVector, QuantumError> {
    let n = v.norm();
    if n <= tolerance::ARITHMETIC {
        return Err(QuantumError::ZeroVector);
    }
    Ok(v / C64::new(n, 0.0))
}

pub fn real_vector(entries: &[f64]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&x| C64::new(x, 0.0)))
}

/// Check that `vectors` is an orthonormal basis of their ambient space.
pub fn check_orthonormal(vectors: &[CVector], tol: f64) -> Result<(), QuantumError> {
    let n = vectors.first().map(|v| v.len()).unwrap_or(0);
    if vectors.len() != n {
        return Err(QuantumError::NotOrthonormal);
    }
    for (i, u) in vectors.iter().enumerate() {
        if u.len() != n {
            return Err(QuantumError::NotOrthonormal);
        }
        for (j, v) in vectors.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            if (u.dotc(v) - C64::new(expected, 0.0)).norm() > tol {
                return Err(QuantumError::NotOrthonormal);
            }
        }
    }
    Ok(())
}
