use serde::Serialize;

use super::{BasisFamily, MkcError};
use crate::quantum::{ComplexMatrix, DensityOperator, ProjectionOp};
use crate::tolerance;

/// One eigenvalue of a family observable with the atoms spanning its eigenspace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeGroup {
    pub value: f64,
    pub atoms: u32,
}

/// The family observable closest to a given Hermitian matrix.
#[derive(Clone, Debug)]
pub struct NearestObservable {
    pub basis: usize,
    pub observable: ComplexMatrix,
    pub distance: f64,
    /// Distinct eigenvalues in ascending order with their atom sets.
    pub groups: Vec<OutcomeGroup>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Keep the eigenvalues of `a` and place them on a family basis, choosing the
/// basis and the assignment of eigenvalues to atoms that minimize `‖A − A′‖`.
/// Ties go to the lowest basis index, then the first permutation in
/// lexicographic order.
pub fn nearest_family_observable(
    a: &ComplexMatrix,
    family: &BasisFamily,
) -> Result<NearestObservable, MkcError> {
    let n = family.dimension();
    if a.dim() != n {
        return Err(MkcError::DimensionMismatch { left: n, right: a.dim() });
    }
    if !a.is_hermitian(tolerance::STRUCTURAL) {
        return Err(MkcError::NotHermitian);
    }
    if family.is_empty() {
        return Err(MkcError::EmptyFamily);
    }
    let spectrum = a.eigh().values;
    let perms = permutations(n);
    let mut best: Option<(f64, usize, &Vec<usize>, ComplexMatrix)> = None;
    for m in 0..family.len() {
        let basis = family.basis(m);
        for perm in &perms {
            let candidate = perm.iter().zip(&spectrum).fold(ComplexMatrix::zeros(n), |acc, (&k, &l)| {
                &acc + &ComplexMatrix::outer(&basis[k], &basis[k]).scale_real(l)
            });
            let d = (a - &candidate).operator_norm();
            if best.as_ref().is_none_or(|(bd, ..)| d < *bd - tolerance::ARITHMETIC) {
                best = Some((d, m, perm, candidate));
            }
        }
    }
    let (distance, basis, perm, observable) = best.expect("nonempty family");
    let mut groups: Vec<OutcomeGroup> = Vec::new();
    for (&k, &l) in perm.iter().zip(&spectrum) {
        match groups.last_mut() {
            Some(g) if l - g.value <= tolerance::EIGEN_GAP => g.atoms |= 1 << k,
            _ => groups.push(OutcomeGroup { value: l, atoms: 1 << k }),
        }
    }
    Ok(NearestObservable {
        basis,
        observable,
        distance,
        groups,
    })
}

/// Per eigenvalue: `|Tr(ρP′) − Tr(ρP)|` and `‖P′ − P‖` for the spectral
/// projectors of `a` and of its family surrogate.
#[derive(Clone, Debug, Serialize)]
pub struct ContinuityCheck {
    pub value: f64,
    pub probability_shift: f64,
    pub projector_distance: f64,
}

impl ContinuityCheck {
    pub fn holds(&self) -> bool {
        self.probability_shift <= self.projector_distance + tolerance::ARITHMETIC
    }
}

pub fn continuity_checks(
    rho: &DensityOperator,
    a: &ComplexMatrix,
    nearest: &NearestObservable,
    family: &BasisFamily,
) -> Result<Vec<ContinuityCheck>, MkcError> {
    let exact = a.spectral_decomposition();
    if exact.len() != nearest.groups.len() {
        return Err(MkcError::SpectrumMismatch);
    }
    exact
        .iter()
        .zip(&nearest.groups)
        .map(|((value, p), g)| {
            let p = ProjectionOp::new(p.clone())?;
            let q = family.projector(nearest.basis, g.atoms);
            let shift = (rho.expectation(q.matrix())? - rho.expectation(p.matrix())?).abs();
            Ok(ContinuityCheck {
                value: *value,
                probability_shift: shift,
                projector_distance: (q.matrix() - p.matrix()).operator_norm(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::permutations;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(2), vec![vec![0, 1], vec![1, 0]]);
    }
}
