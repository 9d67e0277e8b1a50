use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use super::MkcError;
use crate::quantum::{check_orthonormal, random_basis, CVector, ComplexMatrix, ProjectionOp, C64};
use crate::{rng, tolerance};

/// Attempts allowed per basis before generation gives up.
pub const RESAMPLE_BUDGET: usize = 1000;
pub const MAX_BASES: usize = 64;

const FAMILY_STREAM: u64 = 0x4641_4d49;

/// A finite family of pairwise totally incompatible orthonormal bases.
#[derive(Clone, Debug)]
pub struct BasisFamily {
    dimension: usize,
    bases: Vec<Vec<CVector>>,
    seed: Option<u64>,
}

/// A projection belonging to the Boolean algebra of one family basis,
/// given as the set of that basis' atoms it contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyElement {
    Zero,
    Identity,
    InBasis { basis: usize, atoms: u32 },
}

impl BasisFamily {
    /// Build a family from explicit bases, checking orthonormality and
    /// pairwise total incompatibility.
    pub fn from_bases(bases: Vec<Vec<CVector>>) -> Result<Self, MkcError> {
        let dimension = check_dimension(bases.first().map(|b| b.len()).unwrap_or(0))?;
        if bases.len() > MAX_BASES {
            return Err(MkcError::TooManyBases(bases.len()));
        }
        for (m, b) in bases.iter().enumerate() {
            check_orthonormal(b, tolerance::STRUCTURAL).map_err(|_| MkcError::NotOrthonormal(m))?;
            if b.len() != dimension {
                return Err(MkcError::NotOrthonormal(m));
            }
        }
        for i in 0..bases.len() {
            for j in (i + 1)..bases.len() {
                if !totally_incompatible(&bases[i], &bases[j]) {
                    return Err(MkcError::Compatible { first: i, second: j });
                }
            }
        }
        Ok(Self {
            dimension,
            bases,
            seed: None,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn bases(&self) -> &[Vec<CVector>] {
        &self.bases
    }

    pub fn basis(&self, m: usize) -> &[CVector] {
        &self.bases[m]
    }

    /// Sum of the rank-one projectors onto the atoms listed in `atoms`.
    pub fn projector(&self, m: usize, atoms: u32) -> ProjectionOp {
        let chosen: Vec<CVector> = (0..self.dimension)
            .filter(|k| atoms & (1 << k) != 0)
            .map(|k| self.bases[m][k].clone())
            .collect();
        ProjectionOp::from_orthonormal(self.dimension, &chosen)
    }

    /// Locate `p` in the family: the unique basis whose Boolean algebra holds it.
    pub fn locate(&self, p: &ProjectionOp) -> Result<FamilyElement, MkcError> {
        if p.dim() != self.dimension {
            return Err(MkcError::DimensionMismatch {
                left: self.dimension,
                right: p.dim(),
            });
        }
        if p.approx_eq(&ProjectionOp::zero(self.dimension)) {
            return Ok(FamilyElement::Zero);
        }
        if p.approx_eq(&ProjectionOp::identity(self.dimension)) {
            return Ok(FamilyElement::Identity);
        }
        for m in 0..self.bases.len() {
            let mut atoms = 0u32;
            let mut clean = true;
            for (k, e) in self.bases[m].iter().enumerate() {
                let w = e.dotc(&p.matrix().apply(e)).re;
                if (w - 1.0).abs() <= tolerance::CONTAINMENT {
                    atoms |= 1 << k;
                } else if w.abs() > tolerance::CONTAINMENT {
                    clean = false;
                    break;
                }
            }
            if clean && self.projector(m, atoms).approx_eq(p) {
                return Ok(FamilyElement::InBasis { basis: m, atoms });
            }
        }
        Err(MkcError::NotInFamily)
    }
}

fn check_dimension(n: usize) -> Result<usize, MkcError> {
    if (2..=4).contains(&n) {
        Ok(n)
    } else {
        Err(MkcError::UnsupportedDimension(n))
    }
}

/// Nontrivial elements of a basis' Boolean algebra, one per complementary
/// pair (commutators with `P` and `1 − P` differ only in sign).
fn algebra_representatives(basis: &[CVector]) -> Vec<ComplexMatrix> {
    let n = basis.len();
    (1u32..(1 << n) - 1)
        .filter(|s| s & 1 == 1)
        .map(|s| {
            let m = (0..n)
                .filter(|k| s & (1 << k) != 0)
                .fold(DMatrix::zeros(n, n), |acc, k| acc + &basis[k] * basis[k].adjoint());
            ComplexMatrix::new(m).expect("square")
        })
        .collect()
}

/// Smallest commutator norm between nontrivial projections of the two bases.
pub fn min_commutator_norm(a: &[CVector], b: &[CVector]) -> f64 {
    let pa = algebra_representatives(a);
    let pb = algebra_representatives(b);
    pa.iter()
        .flat_map(|p| pb.iter().map(move |q| p.commutator(q).operator_norm()))
        .fold(f64::INFINITY, f64::min)
}

pub fn totally_incompatible(a: &[CVector], b: &[CVector]) -> bool {
    min_commutator_norm(a, b) > tolerance::INCOMPATIBILITY
}

/// `K` Haar-random bases in dimension `n`, each resampled until it is totally
/// incompatible with all earlier ones. The first `k` bases for `K` and for
/// any larger count coincide.
pub fn generate_basis_family(n: usize, count: usize, seed: u64) -> Result<BasisFamily, MkcError> {
    generate_anchored_family(n, count, seed, &[])
}

/// Like [`generate_basis_family`], but the first bases contain the given
/// orthonormal vectors (one anchor list per basis), completed at random.
pub fn generate_anchored_family(
    n: usize,
    count: usize,
    seed: u64,
    anchors: &[Vec<CVector>],
) -> Result<BasisFamily, MkcError> {
    check_dimension(n)?;
    if count > MAX_BASES {
        return Err(MkcError::TooManyBases(count));
    }
    if anchors.len() > count {
        return Err(MkcError::TooManyAnchors {
            anchors: anchors.len(),
            bases: count,
        });
    }
    let mut r = rng::stream(seed, &[FAMILY_STREAM]);
    let mut bases: Vec<Vec<CVector>> = Vec::with_capacity(count);
    for m in 0..count {
        let mut accepted = None;
        for _ in 0..RESAMPLE_BUDGET {
            let candidate = match anchors.get(m) {
                Some(a) => complete_basis(n, a, &mut r)?,
                None => random_basis(n, &mut r),
            };
            if bases.iter().all(|b| totally_incompatible(b, &candidate)) {
                accepted = Some(candidate);
                break;
            }
        }
        match accepted {
            Some(b) => bases.push(b),
            None => return Err(MkcError::BudgetExhausted { basis: m }),
        }
    }
    Ok(BasisFamily {
        dimension: n,
        bases,
        seed: Some(seed),
    })
}

/// Extend orthonormal `anchor` vectors to a basis with random Gram-Schmidt steps.
fn complete_basis<R: Rng + ?Sized>(
    n: usize,
    anchor: &[CVector],
    r: &mut R,
) -> Result<Vec<CVector>, MkcError> {
    check_orthonormal_partial(anchor, n)?;
    let mut out: Vec<CVector> = anchor.to_vec();
    while out.len() < n {
        let mut v = CVector::from_fn(n, |_, _| C64::new(r.sample(StandardNormal), r.sample(StandardNormal)));
        for _ in 0..2 {
            for b in &out {
                let c = b.dotc(&v);
                v -= b * c;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            out.push(v / C64::new(norm, 0.0));
        }
    }
    Ok(out)
}

fn check_orthonormal_partial(vs: &[CVector], n: usize) -> Result<(), MkcError> {
    for (i, u) in vs.iter().enumerate() {
        if u.len() != n {
            return Err(MkcError::DimensionMismatch { left: n, right: u.len() });
        }
        for (j, v) in vs.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            if (u.dotc(v) - C64::new(want, 0.0)).norm() > tolerance::STRUCTURAL {
                return Err(MkcError::AnchorNotOrthonormal);
            }
        }
    }
    Ok(())
}
