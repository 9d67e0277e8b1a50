use super::matrix::{check_orthonormal, normalize, CVector, ComplexMatrix, C64};
use super::state::{DensityOperator, ProjectionOp};
use super::QuantumError;
use crate::tolerance;

/// `F_{u,v} = u v† + v u†`, so that `F ψ = ⟨v,ψ⟩u + ⟨u,ψ⟩v`.
pub fn f_observable(u: &CVector, v: &CVector) -> ComplexMatrix {
    &ComplexMatrix::outer(u, v) + &ComplexMatrix::outer(v, u)
}

/// `G_{u,v} = i u v† − i v u†`.
pub fn g_observable(u: &CVector, v: &CVector) -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    &ComplexMatrix::outer(u, v).scale(i) - &ComplexMatrix::outer(v, u).scale(i)
}

/// Rebuild the state behind an expectation functional from the values it
/// takes on rank-one projectors and the `F`/`G` observables of `basis`.
///
/// Off-diagonal entries are read twice, once from each ordering of the
/// index pair; disagreement beyond [`tolerance::STRUCTURAL`] means the
/// oracle is not of the form `A ↦ Tr(UA)`.
pub fn reconstruct_state<E>(oracle: E, basis: &[CVector]) -> Result<DensityOperator, QuantumError>
where
    E: Fn(&ComplexMatrix) -> f64,
{
    check_orthonormal(basis, tolerance::STRUCTURAL)?;
    let n = basis.len();
    let mut coords = vec![C64::new(0.0, 0.0); n * n];
    for (i, e) in basis.iter().enumerate() {
        coords[i * n + i] = C64::new(oracle(ProjectionOp::onto(e)?.matrix()), 0.0);
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (ei, ej) = (&basis[i], &basis[j]);
            let z = C64::new(0.5 * oracle(&f_observable(ei, ej)), 0.5 * oracle(&g_observable(ei, ej)));
            coords[i * n + j] = z;
            if i > j {
                worst = worst.max((z - coords[j * n + i].conj()).norm());
            }
        }
    }
    if worst > tolerance::STRUCTURAL {
        return Err(QuantumError::InconsistentOracle(format!(
            "conjugate-symmetry defect {worst:e}"
        )));
    }
    let mut u = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            u = &u + &ComplexMatrix::outer(&basis[i], &basis[j]).scale(coords[i * n + j]);
        }
    }
    DensityOperator::new(u.hermitian_part())
        .map_err(|e| QuantumError::InconsistentOracle(format!("reconstruction is not a state: {e}")))
}

/// A unit vector whose projector has expectation strictly between 0 and 1
/// under `u`, demonstrating that `u` is not dispersion free.
pub fn dispersion_probe(u: &DensityOperator) -> Result<(CVector, f64), QuantumError> {
    let n = u.dim();
    if n < 2 {
        return Err(QuantumError::TooSmall(n));
    }
    let eig = u.matrix().eigh();
    let top = eig.vectors[n - 1].clone();
    let top_val = eig.values[n - 1];
    let probe = if top_val < 1.0 - tolerance::STRUCTURAL {
        top
    } else {
        // pure state: mix its vector with an orthogonal one
        normalize(&(&top + &eig.vectors[0]))?
    };
    let p = u.expectation(ProjectionOp::onto(&probe)?.matrix())?;
    Ok((probe, p))
}
