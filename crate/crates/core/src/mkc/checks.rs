use nalgebra::Matrix2;
use rayon::prelude::*;
use serde::Serialize;

use super::valuation::{BornWeights, Valuation, ValuationSeed};
use super::{BasisFamily, MkcError};
use crate::quantum::{CVector, DensityOperator};
use std::sync::Arc;

/// Empirical frequency of `λ(P) = 1` compared with `Tr(ρP)`.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionStat {
    pub basis: usize,
    pub atoms: u32,
    pub exact: f64,
    pub empirical: f64,
    pub sigma: f64,
    pub z: f64,
}

/// Joint frequency of two projections from different bases against the
/// product of their exact marginals.
#[derive(Clone, Debug, Serialize)]
pub struct JointStat {
    pub first: (usize, u32),
    pub second: (usize, u32),
    pub product: f64,
    pub empirical: f64,
    pub sigma: f64,
    pub z: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrequencyReport {
    pub samples: u64,
    pub projections: Vec<ProjectionStat>,
    pub joints: Vec<JointStat>,
    /// Samples in which some basis did not have exactly one atom valued 1,
    /// or some projection's value differed from the sum over its atoms.
    pub sum_rule_violations: u64,
    pub max_projection_z: f64,
    pub max_joint_z: f64,
}

impl FrequencyReport {
    pub fn within(&self, k_sigma: f64) -> bool {
        self.max_projection_z <= k_sigma && self.max_joint_z <= k_sigma
    }
}

fn z_score(empirical: f64, p: f64, n: u64) -> (f64, f64) {
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    let dev = (empirical - p).abs();
    let z = if sigma > 0.0 {
        dev / sigma
    } else if dev == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    (sigma, z)
}

/// Draw `samples` valuations and test every nontrivial projection of every
/// family basis, plus the joint of atom 0 of basis `m` with atom 0 of basis
/// `m + 1` (cyclically).
pub fn valuation_frequency_test(
    rho: &DensityOperator,
    family: &BasisFamily,
    samples: u64,
    seed: u64,
) -> Result<FrequencyReport, MkcError> {
    let weights = Arc::new(BornWeights::new(rho, family)?);
    let k = family.len();
    let n = family.dimension();
    let per_sample: Vec<(Vec<u8>, bool)> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut v = Valuation::from_weights(weights.clone(), ValuationSeed::new(seed, s));
            let picks: Vec<u8> = (0..k).map(|m| v.selected(m) as u8).collect();
            let consistent = (0..k).all(|m| {
                let atoms: Vec<u8> = (0..n).map(|a| v.value_in_basis(m, 1 << a)).collect();
                atoms.iter().map(|&x| x as u32).sum::<u32>() == 1
                    && (1u32..(1 << n) - 1).all(|set| {
                        let summed: u8 = (0..n).filter(|a| set & (1 << a) != 0).map(|a| atoms[a]).sum();
                        v.value_in_basis(m, set) == summed
                    })
            });
            (picks, consistent)
        })
        .collect();
    let sum_rule_violations = per_sample.iter().filter(|(_, ok)| !ok).count() as u64;
    let draws: Vec<Vec<u8>> = per_sample.into_iter().map(|(d, _)| d).collect();

    let mut atom_counts = vec![vec![0u64; n]; k];
    for d in &draws {
        for (m, &j) in d.iter().enumerate() {
            atom_counts[m][j as usize] += 1;
        }
    }

    let mut projections = Vec::new();
    for (m, counts) in atom_counts.iter().enumerate() {
        for atoms in 1u32..(1 << n) - 1 {
            let exact: f64 = (0..n).filter(|a| atoms & (1 << a) != 0).map(|a| weights.weights(m)[a]).sum();
            let hits: u64 = (0..n).filter(|a| atoms & (1 << a) != 0).map(|a| counts[a]).sum();
            let empirical = hits as f64 / samples as f64;
            let (sigma, z) = z_score(empirical, exact, samples);
            projections.push(ProjectionStat {
                basis: m,
                atoms,
                exact,
                empirical,
                sigma,
                z,
            });
        }
    }

    let mut joints = Vec::new();
    if k > 1 {
        for m in 0..k {
            let m2 = (m + 1) % k;
            if m2 == m || (k == 2 && m == 1) {
                continue;
            }
            let hits = draws.iter().filter(|d| d[m] == 0 && d[m2] == 0).count() as u64;
            let product = weights.weights(m)[0] * weights.weights(m2)[0];
            let empirical = hits as f64 / samples as f64;
            let (sigma, z) = z_score(empirical, product, samples);
            joints.push(JointStat {
                first: (m, 1),
                second: (m2, 1),
                product,
                empirical,
                sigma,
                z,
            });
        }
    }
    let max_projection_z = projections.iter().map(|p| p.z).fold(0.0, f64::max);
    let max_joint_z = joints.iter().map(|p| p.z).fold(0.0, f64::max);
    Ok(FrequencyReport {
        samples,
        projections,
        joints,
        sum_rule_violations,
        max_projection_z,
        max_joint_z,
    })
}

/// Per-basis outcome of the neighbourhood test for a unit vector `e`.
#[derive(Clone, Debug, Serialize)]
pub struct NeighbourhoodBasis {
    /// Atoms with `‖P e‖ > upper`.
    pub atoms_in_upper: Vec<usize>,
    /// Atoms with `‖P e‖ < lower`.
    pub atoms_in_lower: Vec<usize>,
    /// No atom choice respects the atom-level constraints.
    pub atom_conflict: bool,
    /// No atom choice respects the constraints for every projection of the basis.
    pub projection_conflict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NeighbourhoodReport {
    pub upper: f64,
    pub lower: f64,
    pub bases: Vec<NeighbourhoodBasis>,
    pub atom_level_nonempty: bool,
    pub all_projections_nonempty: bool,
}

/// For a unit vector `e`, test whether some valuation sends every family
/// projection `P` with `‖P e‖ > upper` to 1 and every one with
/// `‖P e‖ < lower` to 0, first for atoms only and then for all projections.
pub fn lambda_e_check(
    e: &CVector,
    family: &BasisFamily,
    upper: f64,
    lower: f64,
) -> Result<NeighbourhoodReport, MkcError> {
    let n = family.dimension();
    if e.len() != n {
        return Err(MkcError::DimensionMismatch { left: n, right: e.len() });
    }
    let e = crate::quantum::normalize(e).map_err(MkcError::Quantum)?;
    let mut bases = Vec::with_capacity(family.len());
    for b in family.bases() {
        let w: Vec<f64> = b.iter().map(|a| a.dotc(&e).norm_sqr()).collect();
        let norm_of = |atoms: u32| -> f64 {
            (0..n).filter(|k| atoms & (1 << k) != 0).map(|k| w[k]).sum::<f64>().sqrt()
        };
        let atoms_in_upper: Vec<usize> = (0..n).filter(|&k| norm_of(1 << k) > upper).collect();
        let atoms_in_lower: Vec<usize> = (0..n).filter(|&k| norm_of(1 << k) < lower).collect();
        let atom_ok = |j: usize| {
            atoms_in_upper.iter().all(|&k| k == j) && !atoms_in_lower.contains(&j)
        };
        let projection_ok = |j: usize| {
            (1u32..(1 << n) - 1).all(|s| {
                let v = norm_of(s);
                let has = s & (1 << j) != 0;
                !(v > upper && !has) && !(v < lower && has)
            })
        };
        bases.push(NeighbourhoodBasis {
            atom_conflict: !(0..n).any(atom_ok),
            projection_conflict: !(0..n).any(|j| atom_ok(j) && projection_ok(j)),
            atoms_in_upper,
            atoms_in_lower,
        });
    }
    Ok(NeighbourhoodReport {
        upper,
        lower,
        atom_level_nonempty: bases.iter().all(|b| !b.atom_conflict),
        all_projections_nonempty: bases.iter().all(|b| !b.projection_conflict),
        bases,
    })
}

/// For a family on C²⊗C², `1 − s_max²` per basis vector, where `s_max` is the
/// largest Schmidt coefficient. Zero means a product vector.
pub fn product_defect(family: &BasisFamily) -> Result<Vec<Vec<f64>>, MkcError> {
    if family.dimension() != 4 {
        return Err(MkcError::UnsupportedDimension(family.dimension()));
    }
    Ok(family
        .bases()
        .iter()
        .map(|b| {
            b.iter()
                .map(|v| {
                    let m = Matrix2::new(v[0], v[1], v[2], v[3]);
                    let s = m.singular_values();
                    let top = s[0].max(s[1]);
                    (1.0 - top * top).max(0.0)
                })
                .collect()
        })
        .collect())
}
