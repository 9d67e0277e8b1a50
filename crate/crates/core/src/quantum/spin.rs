use std::f64::consts::FRAC_1_SQRT_2;

use super::matrix::{real_vector, CVector, ComplexMatrix, C64};
use super::state::ProjectionOp;

/// Spin observable along the axis `(cos θ sin φ, sin θ sin φ, cos φ)`.
#[derive(Clone, Debug)]
pub struct SpinObservable {
    pub theta: f64,
    pub phi: f64,
    pub sigma: ComplexMatrix,
    /// Spin up along the axis, `(1 + σ)/2`.
    pub up: ProjectionOp,
    /// Spin down along the axis, `(1 − σ)/2`.
    pub down: ProjectionOp,
}

impl SpinObservable {
    /// Projector for outcome `+1` (`true`) or `−1` (`false`).
    pub fn outcome(&self, up: bool) -> &ProjectionOp {
        if up {
            &self.up
        } else {
            &self.down
        }
    }
}

pub fn spin_operator(theta: f64, phi: f64) -> SpinObservable {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let off = C64::new(ct * sp, -st * sp);
    let sigma = ComplexMatrix::from_rows(
        2,
        &[C64::new(cp, 0.0), off, off.conj(), C64::new(-cp, 0.0)],
    )
    .expect("2x2");
    let id = ComplexMatrix::identity(2);
    let up = ProjectionOp::new((&id + &sigma).scale_real(0.5)).expect("σ² = 1");
    let down = ProjectionOp::new((&id - &sigma).scale_real(0.5)).expect("σ² = 1");
    SpinObservable {
        theta,
        phi,
        sigma,
        up,
        down,
    }
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2")
}

pub fn pauli_y() -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::from_rows(2, &[C64::new(0.0, 0.0), -i, i, C64::new(0.0, 0.0)]).expect("2x2")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).expect("2x2")
}

/// The two-particle singlet `(0, 1, −1, 0)/√2`.
pub fn singlet() -> CVector {
    real_vector(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0])
}
