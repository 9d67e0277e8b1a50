use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{CVector, ComplexMatrix, C64};
use super::state::DensityOperator;

fn gaussian_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-distributed unitary from the QR factorization of a complex Gaussian
/// matrix, with the phases of `R`'s diagonal moved into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<C64> {
    let qr = gaussian_matrix(n, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Columns of a Haar-random unitary.
pub fn random_basis<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<CVector> {
    let u = random_unitary(n, rng);
    (0..n).map(|j| u.column(j).into_owned()).collect()
}

/// Full-rank random state `GG†/Tr(GG†)`.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityOperator {
    let g = gaussian_matrix(n, rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    let m = ComplexMatrix::new(m / C64::new(tr, 0.0)).expect("finite");
    DensityOperator::new(m.hermitian_part()).expect("positive with unit trace")
}

pub fn random_pure_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVector {
    let v = CVector::from_fn(n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let norm = v.norm();
    v / C64::new(norm, 0.0)
}
