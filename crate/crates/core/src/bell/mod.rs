//! Bell-type inequalities: CHSH, local strategies, the logical Bell
//! inequality and its sequential reading, imprecise triad measurements and
//! free-will counting bounds.

mod appleby;
mod chsh;
mod fwt;
mod lhv;
mod logical;

use num_rational::BigRational;
use thiserror::Error;

use crate::exact::GeometryError;

pub use appleby::{
    appleby_grid_sup, appleby_prob_sum_two, is_violating, meyer_coupling, ApplebyGridSup, CouplingSample,
    MeyerCoupling,
};
pub use chsh::{
    chsh_grid_max, chsh_value, singlet_correlation, singlet_correlation_matrix, AngleSetting, ChshAngles,
    GridMaximum,
};
pub use fwt::{
    fwt_bounds, fwt_bounds_with, fwt_direction_counts, fwt_satisfied_exact, triad_coefficient, DirectionCounts,
    FwtBounds, F_MIN_ALTERNATE_DENOMINATOR, F_MIN_DENOMINATOR,
};
pub use lhv::{best_deterministic_chsh, lhv_chsh_monte_carlo, LhvEstimate, LhvStrategy, ResponseTable};
pub use logical::{
    joint_same, logical_bell, sequential_logical_bell, LogicalAngles, LogicalBell, SequentialLogicalBell,
};

#[derive(Debug, Error)]
pub enum BellError {
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("imprecision {0} is outside [0, 1]")]
    EpsilonOutOfRange(f64),
    #[error("wrong input set: {0}")]
    WrongInputSet(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub(crate) fn serialize_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    #[test]
    fn correlation_examples() {
        let a = AngleSetting::new(0.3, 1.1);
        assert!((singlet_correlation(a, a) + 1.0).abs() < 1e-12);
        let e = singlet_correlation(AngleSetting::planar(FRAC_PI_2), AngleSetting::planar(0.0));
        assert!(e.abs() < 1e-12);
        let e = singlet_correlation(AngleSetting::planar(0.0), AngleSetting::planar(7.0 * PI / 4.0));
        assert!((e + SQRT_2 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn chsh_examples() {
        assert!((chsh_value(ChshAngles::maximal()) - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((chsh_value(ChshAngles::new(0.4, 0.4, 0.4, 0.4)) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn table_codes_cover_all_tables() {
        let all: std::collections::HashSet<_> = ResponseTable::all().collect();
        assert_eq!(all.len(), 256);
        assert_eq!(best_deterministic_chsh().0, 2.0);
    }

    #[test]
    fn logical_examples() {
        let b = logical_bell(LogicalAngles::standard());
        assert!((b.lhs - 0.5).abs() < 1e-12 && (b.rhs - 0.375).abs() < 1e-12 && b.violated);
        let b = logical_bell(LogicalAngles::new(0.7, 0.7, 0.7, 0.7));
        assert!(b.lhs.abs() < 1e-12 && !b.violated);
        let s = sequential_logical_bell(LogicalAngles::standard());
        assert!((s.bell.not_a2_not_b2 - 5.0 / 16.0).abs() < 1e-12);
        assert!(!s.bell.violated);
    }

    #[test]
    fn appleby_examples() {
        assert_eq!(appleby_prob_sum_two([1.0, 1.0, 0.0]).unwrap(), 1.0);
        assert!((appleby_prob_sum_two([0.5; 3]).unwrap() - 0.375).abs() < 1e-15);
        assert!(matches!(appleby_prob_sum_two([1.5, 0.0, 0.0]), Err(BellError::ProbabilityOutOfRange(_))));
    }

    #[test]
    fn fwt_examples() {
        assert!(fwt_bounds(0.0, 0.0).unwrap().satisfied);
        assert!(!fwt_bounds(1.0 / 1320.0, 0.0).unwrap().satisfied);
        assert_eq!(triad_coefficient().to_string(), "4/55");
        assert!(fwt_bounds(2.0, 0.0).is_err());
    }
}
