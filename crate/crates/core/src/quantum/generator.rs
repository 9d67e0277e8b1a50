use serde::Serialize;

use super::matrix::ComplexMatrix;
use super::state::ProjectionOp;
use super::QuantumError;
use crate::tolerance;

/// Largest number of projections handled by [`ks_single_generator`].
pub const MAX_GENERATED: usize = 5;

/// Spectral weights `α_1 = 1`, `α_k = (1 − √(1 − α_{k−1}))/2`.
pub fn generator_alphas(n: usize) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(n);
    for k in 0..n {
        let a: f64 = if k == 0 {
            1.0
        } else {
            0.5 * (1.0 - (1.0 - out[k - 1]).sqrt())
        };
        out.push(a);
    }
    out
}

/// `h(x) = 4(x − x²)`, which maps `α_k` to `α_{k−1}` and both 0 and 1 to 0.
pub fn h_scalar(x: f64) -> f64 {
    4.0 * (x - x * x)
}

fn h_matrix(x: &ComplexMatrix) -> ComplexMatrix {
    x.polynomial(&[0.0, 4.0, -4.0])
}

fn h_iterate(x: &ComplexMatrix, times: usize) -> ComplexMatrix {
    (0..times).fold(x.clone(), |acc, _| h_matrix(&acc))
}

/// A single observable from which every projection is a polynomial function.
#[derive(Clone, Debug, Serialize)]
pub struct SingleGenerator {
    pub alpha: Vec<f64>,
    #[serde(skip)]
    pub generator: ComplexMatrix,
    /// `f_{n,k}(A)` for `k = 1..n`.
    #[serde(skip)]
    pub recovered: Vec<ComplexMatrix>,
    /// `‖f_{n,k}(A) − P_k‖` per projection.
    pub residuals: Vec<f64>,
    /// `‖h^{n−1}(A) − P_n‖`.
    pub top_residual: f64,
    pub max_residual: f64,
}

/// `f_{m,k}(X)`: `f_{m,m} = h^{m−1}` and
/// `f_{m,k}(X) = f_{m−1,k}(X − α_m f_{m,m}(X))` for `k < m` (1-based).
fn recover(alpha: &[f64], m: usize, k: usize, x: &ComplexMatrix) -> ComplexMatrix {
    if k == m {
        return h_iterate(x, m - 1);
    }
    let top = recover(alpha, m, m, x);
    let reduced = x - &top.scale_real(alpha[m - 1]);
    recover(alpha, m - 1, k, &reduced)
}

/// Build `A = Σ α_i P_i` for mutually orthogonal projections and recover each
/// `P_i` from `A` alone by polynomial functional calculus.
pub fn ks_single_generator(projections: &[ProjectionOp]) -> Result<SingleGenerator, QuantumError> {
    let n = projections.len();
    if n == 0 || n > MAX_GENERATED {
        return Err(QuantumError::GeneratorSize(n));
    }
    let dim = projections[0].dim();
    for (i, p) in projections.iter().enumerate() {
        if p.dim() != dim {
            return Err(QuantumError::DimensionMismatch {
                left: dim,
                right: p.dim(),
            });
        }
        for (j, q) in projections.iter().enumerate().skip(i + 1) {
            let overlap = (p.matrix() * q.matrix()).operator_norm();
            if overlap > tolerance::STRUCTURAL {
                return Err(QuantumError::NotOrthogonal { first: i, second: j, overlap });
            }
        }
    }
    let alpha = generator_alphas(n);
    let generator = projections
        .iter()
        .zip(&alpha)
        .fold(ComplexMatrix::zeros(dim), |acc, (p, &a)| &acc + &p.matrix().scale_real(a));
    let recovered: Vec<ComplexMatrix> =
        (1..=n).map(|k| recover(&alpha, n, k, &generator)).collect();
    let residuals: Vec<f64> = recovered
        .iter()
        .zip(projections)
        .map(|(r, p)| (r - p.matrix()).operator_norm())
        .collect();
    let top_residual = (&h_iterate(&generator, n - 1) - projections[n - 1].matrix()).operator_norm();
    let max_residual = residuals.iter().copied().fold(top_residual, f64::max);
    Ok(SingleGenerator {
        alpha,
        generator,
        recovered,
        residuals,
        top_residual,
        max_residual,
    })
}
