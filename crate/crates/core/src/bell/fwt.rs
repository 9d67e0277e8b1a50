use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::BellError;
use crate::exact::cross_product;
use crate::ks::OrthStructure;

/// Lower bound on the frequency of forced violations: one in `40 × 33` joint
/// experiments.
pub const F_MIN_DENOMINATOR: u32 = 1320;
/// Alternate constant `1/40` (one per triad count), kept for comparison.
pub const F_MIN_ALTERNATE_DENOMINATOR: u32 = 40;

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Weight of the triad-imprecision term in the upper bound, `4/55`.
pub fn triad_coefficient() -> BigRational {
    rational(4, 55)
}

#[derive(Clone, Debug, Serialize)]
pub struct FwtBounds {
    pub eps_s: f64,
    pub eps_t: f64,
    pub f_max: f64,
    pub f_min: f64,
    pub satisfied: bool,
}

fn check_eps(x: f64) -> Result<f64, BellError> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(BellError::EpsilonOutOfRange(x))
    }
}

/// `f_max = ε_S + (4/55) ε_T` against `f_min = 1/1320`.
pub fn fwt_bounds(eps_s: f64, eps_t: f64) -> Result<FwtBounds, BellError> {
    fwt_bounds_with(eps_s, eps_t, F_MIN_DENOMINATOR)
}

/// As [`fwt_bounds`] with `f_min = 1/f_min_denominator`.
pub fn fwt_bounds_with(eps_s: f64, eps_t: f64, f_min_denominator: u32) -> Result<FwtBounds, BellError> {
    let eps_s = check_eps(eps_s)?;
    let eps_t = check_eps(eps_t)?;
    let coeff = triad_coefficient().to_f64().expect("small rational");
    let f_max = eps_s + coeff * eps_t;
    let f_min = 1.0 / f64::from(f_min_denominator);
    Ok(FwtBounds {
        eps_s,
        eps_t,
        f_max,
        f_min,
        satisfied: f_max < f_min,
    })
}

/// Exact version of the bound test.
pub fn fwt_satisfied_exact(eps_s: &BigRational, eps_t: &BigRational) -> bool {
    eps_s + triad_coefficient() * eps_t < rational(1, i64::from(F_MIN_DENOMINATOR))
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectionCounts {
    pub directions: usize,
    pub triads_total: usize,
    pub with_three: usize,
    pub with_two: usize,
    /// `(3/d)(with_three/total) + (2/d)(with_two/total)` for `d` directions.
    #[serde(serialize_with = "crate::bell::serialize_rational")]
    pub coefficient: BigRational,
    pub joint_experiments: usize,
}

/// Complete each orthogonal pair of a 33-direction structure in dimension 3
/// to a triad and count how many directions of the set each triad holds.
pub fn fwt_direction_counts(s: &OrthStructure) -> Result<DirectionCounts, BellError> {
    if s.dimension() != 3 || s.vectors().len() != 33 {
        return Err(BellError::WrongInputSet(format!(
            "expected 33 directions in dimension 3, got {} in dimension {}",
            s.vectors().len(),
            s.dimension()
        )));
    }
    let mut with_two = 0;
    for &(i, j) in s.pairs() {
        let w = cross_product(&s.vectors()[i], &s.vectors()[j])?;
        if s.vectors().iter().any(|v| v.same_ray(&w)) {
            return Err(BellError::WrongInputSet(format!(
                "pair ({}, {}) completes inside the set",
                s.vectors()[i].label(),
                s.vectors()[j].label()
            )));
        }
        with_two += 1;
    }
    let with_three = s.bases().len();
    let total = with_three + with_two;
    if total.is_zero() {
        return Err(BellError::WrongInputSet("no orthogonal relations".into()));
    }
    let d = s.vectors().len() as i64;
    let t = total as i64;
    let coefficient = rational(3, d) * rational(with_three as i64, t) + rational(2, d) * rational(with_two as i64, t);
    Ok(DirectionCounts {
        directions: s.vectors().len(),
        triads_total: total,
        with_three,
        with_two,
        coefficient,
        joint_experiments: total * s.vectors().len(),
    })
}
