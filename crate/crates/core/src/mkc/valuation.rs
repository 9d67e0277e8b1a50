use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use super::{BasisFamily, FamilyElement, MkcError};
use crate::quantum::{CVector, DensityOperator, ProjectionOp};
use crate::rng;

const VALUATION_STREAM: u64 = 0x5641_4c55;

/// Born weights `Tr(ρ P_{e_k^{(m)}})` for every atom of every family basis.
#[derive(Clone, Debug)]
pub struct BornWeights {
    per_basis: Vec<Vec<f64>>,
}

impl BornWeights {
    pub fn new(rho: &DensityOperator, family: &BasisFamily) -> Result<Self, MkcError> {
        if rho.dim() != family.dimension() {
            return Err(MkcError::DimensionMismatch {
                left: family.dimension(),
                right: rho.dim(),
            });
        }
        let per_basis = family
            .bases()
            .iter()
            .map(|b| b.iter().map(|e| atom_weight(rho, e)).collect())
            .collect();
        Ok(Self { per_basis })
    }

    pub fn weights(&self, m: usize) -> &[f64] {
        &self.per_basis[m]
    }

    pub fn basis_count(&self) -> usize {
        self.per_basis.len()
    }
}

pub(crate) fn atom_weight(rho: &DensityOperator, e: &CVector) -> f64 {
    e.dotc(&rho.matrix().apply(e)).re.max(0.0)
}

/// Draw an index from `weights` using one uniform variate.
pub(crate) fn draw_index<R: Rng + ?Sized>(weights: &[f64], r: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let u = r.random::<f64>() * total;
    let mut acc = 0.0;
    for (k, w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return k;
        }
    }
    // rounding at the top end: last atom with positive weight
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

/// The random choice `m ↦ j(m)` of one atom per basis, filled in only for the
/// bases actually queried. Each `j(m)` is drawn from its own stream addressed
/// by `(seed, stream, m)`, so values do not depend on the query order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationSeed {
    pub seed: u64,
    pub stream: u64,
    chosen: BTreeMap<usize, usize>,
}

impl ValuationSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self {
            seed,
            stream,
            chosen: BTreeMap::new(),
        }
    }

    /// Sampled entries so far.
    pub fn chosen(&self) -> &BTreeMap<usize, usize> {
        &self.chosen
    }
}

/// A valuation on the family's projections induced by a [`ValuationSeed`].
#[derive(Clone, Debug)]
pub struct Valuation {
    weights: Arc<BornWeights>,
    seed: ValuationSeed,
}

/// Sample a valuation for state `rho`. Nothing is drawn until queried.
pub fn sample_valuation(
    rho: &DensityOperator,
    family: &BasisFamily,
    seed: u64,
) -> Result<Valuation, MkcError> {
    Ok(Valuation::from_weights(Arc::new(BornWeights::new(rho, family)?), ValuationSeed::new(seed, 0)))
}

impl Valuation {
    pub fn from_weights(weights: Arc<BornWeights>, seed: ValuationSeed) -> Self {
        Self { weights, seed }
    }

    pub fn seed(&self) -> &ValuationSeed {
        &self.seed
    }

    /// The atom `j(m)` of basis `m` valued 1.
    pub fn selected(&mut self, m: usize) -> usize {
        if let Some(&j) = self.seed.chosen.get(&m) {
            return j;
        }
        let mut r = rng::stream(self.seed.seed, &[VALUATION_STREAM, self.seed.stream, m as u64]);
        let j = draw_index(self.weights.weights(m), &mut r);
        self.seed.chosen.insert(m, j);
        j
    }

    /// Value of the projection onto the atoms `atoms` of basis `m`.
    pub fn value_in_basis(&mut self, m: usize, atoms: u32) -> u8 {
        u8::from(atoms & (1 << self.selected(m)) != 0)
    }

    pub fn value_of(&mut self, element: FamilyElement) -> u8 {
        match element {
            FamilyElement::Zero => 0,
            FamilyElement::Identity => 1,
            FamilyElement::InBasis { basis, atoms } => self.value_in_basis(basis, atoms),
        }
    }

    pub fn value(&mut self, family: &BasisFamily, p: &ProjectionOp) -> Result<u8, MkcError> {
        Ok(self.value_of(family.locate(p)?))
    }
}

/// Closed-form probability that a valuation assigns 1 to `p`: the Born
/// weight of the atoms below `p`.
pub fn mkc_probability(
    rho: &DensityOperator,
    family: &BasisFamily,
    p: &ProjectionOp,
) -> Result<f64, MkcError> {
    if rho.dim() != family.dimension() {
        return Err(MkcError::DimensionMismatch {
            left: family.dimension(),
            right: rho.dim(),
        });
    }
    Ok(match family.locate(p)? {
        FamilyElement::Zero => 0.0,
        FamilyElement::Identity => 1.0,
        FamilyElement::InBasis { basis, atoms } => family
            .basis(basis)
            .iter()
            .enumerate()
            .filter(|(k, _)| atoms & (1 << k) != 0)
            .map(|(_, e)| atom_weight(rho, e))
            .sum(),
    })
}
