use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::valuation::{atom_weight, draw_index};
use super::{nearest_family_observable, BasisFamily, MkcError, NearestObservable};
use crate::quantum::{collapse, ComplexMatrix, DensityOperator};
use crate::rng;

const SEQUENCE_STREAM: u64 = 0x5345_5155;

/// Frequency of one outcome sequence, with its quantum prediction.
#[derive(Clone, Debug, Serialize)]
pub struct OutcomeRow {
    /// Eigenvalues read at each step.
    pub values: Vec<f64>,
    /// Index of the eigenvalue group at each step.
    pub groups: Vec<usize>,
    pub count: u64,
    pub empirical: f64,
    pub exact: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurrogateInfo {
    pub basis: usize,
    pub distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceStats {
    pub shots: u64,
    pub surrogates: Vec<SurrogateInfo>,
    pub outcomes: Vec<OutcomeRow>,
    pub total_variation: f64,
}

impl SequenceStats {
    pub fn row(&self, groups: &[usize]) -> Option<&OutcomeRow> {
        self.outcomes.iter().find(|r| r.groups == groups)
    }
}

/// Simulate a sequence of measurements in the hidden-variable model.
///
/// Each pseudo-observable is replaced by its nearest family observable.
/// Per shot and step a fresh valuation is drawn from the current state, the
/// displayed value is read from it, and the state is collapsed onto the
/// eigenspace of that value before the next step.
pub fn simulate_sequence(
    rho0: &DensityOperator,
    program: &[ComplexMatrix],
    family: &BasisFamily,
    seed: u64,
    shots: u64,
) -> Result<SequenceStats, MkcError> {
    if program.is_empty() {
        return Err(MkcError::EmptyProgram);
    }
    if rho0.dim() != family.dimension() {
        return Err(MkcError::DimensionMismatch {
            left: family.dimension(),
            right: rho0.dim(),
        });
    }
    let surrogate: Vec<NearestObservable> = program
        .iter()
        .map(|a| nearest_family_observable(a, family))
        .collect::<Result<_, _>>()?;

    let runs: Vec<Vec<usize>> = (0..shots)
        .into_par_iter()
        .map(|shot| run_shot(rho0, &surrogate, family, seed, shot))
        .collect::<Result<_, _>>()?;
    let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for r in runs {
        *counts.entry(r).or_insert(0) += 1;
    }

    let exact = exact_sequence_probabilities(rho0, &surrogate, family);
    let mut outcomes = Vec::with_capacity(exact.len());
    let mut tv = 0.0;
    for (groups, p) in exact {
        let count = counts.get(&groups).copied().unwrap_or(0);
        let empirical = count as f64 / shots.max(1) as f64;
        tv += (empirical - p).abs();
        let values = groups
            .iter()
            .zip(&surrogate)
            .map(|(&g, s)| s.groups[g].value)
            .collect();
        outcomes.push(OutcomeRow {
            values,
            groups,
            count,
            empirical,
            exact: p,
        });
    }
    Ok(SequenceStats {
        shots,
        surrogates: surrogate
            .iter()
            .map(|s| SurrogateInfo {
                basis: s.basis,
                distance: s.distance,
            })
            .collect(),
        outcomes,
        total_variation: 0.5 * tv,
    })
}

fn run_shot(
    rho0: &DensityOperator,
    surrogate: &[NearestObservable],
    family: &BasisFamily,
    seed: u64,
    shot: u64,
) -> Result<Vec<usize>, MkcError> {
    let mut rho = rho0.clone();
    let mut out = Vec::with_capacity(surrogate.len());
    for (step, s) in surrogate.iter().enumerate() {
        let weights: Vec<f64> = family.basis(s.basis).iter().map(|e| atom_weight(&rho, e)).collect();
        let mut r = rng::stream(seed, &[SEQUENCE_STREAM, shot, step as u64]);
        let j = draw_index(&weights, &mut r);
        let g = s
            .groups
            .iter()
            .position(|g| g.atoms & (1 << j) != 0)
            .expect("groups partition the atoms");
        out.push(g);
        rho = collapse(&rho, &family.projector(s.basis, s.groups[g].atoms))?;
    }
    Ok(out)
}

/// `Tr(P_T ⋯ P_1 ρ P_1 ⋯ P_T)` for every sequence of outcome groups.
fn exact_sequence_probabilities(
    rho0: &DensityOperator,
    surrogate: &[NearestObservable],
    family: &BasisFamily,
) -> Vec<(Vec<usize>, f64)> {
    let mut frontier: Vec<(Vec<usize>, ComplexMatrix)> = vec![(Vec::new(), rho0.matrix().clone())];
    for s in surrogate {
        let mut next = Vec::new();
        for (path, sigma) in &frontier {
            for (g, group) in s.groups.iter().enumerate() {
                let p = family.projector(s.basis, group.atoms);
                let m = p.matrix() * &(sigma * p.matrix());
                let mut path = path.clone();
                path.push(g);
                next.push((path, m));
            }
        }
        frontier = next;
    }
    frontier
        .into_iter()
        .map(|(path, m)| (path, m.trace().re.max(0.0)))
        .collect()
}
