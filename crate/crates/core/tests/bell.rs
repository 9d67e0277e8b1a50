use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::Rng;

use qfoundry_core::bell::{
    appleby_grid_sup, appleby_prob_sum_two, best_deterministic_chsh, chsh_value, fwt_bounds, fwt_satisfied_exact,
    is_violating, lhv_chsh_monte_carlo, logical_bell, sequential_logical_bell, singlet_correlation,
    singlet_correlation_matrix, triad_coefficient, AngleSetting, ChshAngles, LhvStrategy, LogicalAngles,
    ResponseTable,
};
use qfoundry_core::rng;

proptest! {
    #[test]
    fn closed_form_matches_operator(t1 in -PI..PI, p1 in 0.0..PI, t2 in -PI..PI, p2 in 0.0..PI) {
        let a = AngleSetting::new(t1, p1);
        let b = AngleSetting::new(t2, p2);
        let closed = singlet_correlation(a, b);
        let expected = -p1.cos() * p2.cos() - (t1 - t2).cos() * p1.sin() * p2.sin();
        prop_assert!((closed - expected).abs() < 1e-12);
        prop_assert!((closed - singlet_correlation_matrix(a, b)).abs() < 1e-12);
    }

    #[test]
    fn chsh_never_exceeds_tsirelson(a in -PI..PI, b in -PI..PI, c in -PI..PI, d in -PI..PI) {
        prop_assert!(chsh_value(ChshAngles::new(a, b, c, d)) <= 2.0 * SQRT_2 + 1e-12);
    }

    #[test]
    fn fwt_budget_line_is_satisfied(share in 0u64..=1000) {
        // 3ε_T + ε_S equals the budget exactly, split by `share`.
        let budget = BigRational::new(BigInt::from(1), BigInt::from(2_900_000));
        let t = BigRational::new(BigInt::from(share), BigInt::from(1000));
        let eps_t = &budget * &t / BigInt::from(3);
        let eps_s = &budget * (BigRational::from_integer(BigInt::from(1)) - &t);
        prop_assert!(fwt_satisfied_exact(&eps_s, &eps_t));
        let f = |q: &BigRational| q.to_f64().unwrap();
        prop_assert!(fwt_bounds(f(&eps_s), f(&eps_t)).unwrap().satisfied);
    }
}

#[test]
fn tsirelson_point() {
    let v = chsh_value(ChshAngles::new(0.0, FRAC_PI_2, 7.0 * FRAC_PI_4, 5.0 * FRAC_PI_4));
    assert!((v - 2.0 * SQRT_2).abs() < 1e-12);
}

#[test]
fn correlation_examples() {
    let a = AngleSetting::new(0.3, 1.1);
    assert!((singlet_correlation(a, a) + 1.0).abs() < 1e-15);
    let e = singlet_correlation(AngleSetting::planar(0.0), AngleSetting::planar(7.0 * FRAC_PI_4));
    assert!((e + SQRT_2 / 2.0).abs() < 1e-12);
}

#[test]
fn deterministic_tables_by_enumeration() {
    // Independent enumeration over the 16 × 16 local response tables.
    let mut best = f64::MIN;
    for a in 0u8..16 {
        for b in 0u8..16 {
            let s = |code: u8, x: usize, lam: usize| if code >> (2 * x + lam) & 1 == 1 { 1.0 } else { -1.0 };
            let e = |x: usize, y: usize| (0..2).map(|l| s(a, x, l) * s(b, y, l)).sum::<f64>() / 2.0;
            best = best.max((e(0, 0) - e(0, 1)).abs() + (e(1, 0) + e(1, 1)).abs());
        }
    }
    assert_eq!(best, 2.0);
    assert_eq!(best_deterministic_chsh().0, best);
    assert!(ResponseTable::all().all(|t| t.chsh() <= 2.0));
}

#[test]
fn local_strategies_respect_the_bound() {
    for (i, s) in [LhvStrategy::AntiCorrelated, LhvStrategy::RandomResponse, LhvStrategy::seeded_mixture(8, 3)]
        .iter()
        .enumerate()
    {
        let e = lhv_chsh_monte_carlo(s, 40_000, 100 + i as u64);
        assert!(e.within_local_bound(5.0), "{s:?}: {}", e.value);
        assert!((e.value - s.exact_chsh()).abs() < 5.0 * e.sigma + 1e-12);
    }
}

#[test]
fn logical_bell_standard_angles() {
    let r = logical_bell(LogicalAngles::standard());
    assert!((r.lhs - 0.5).abs() < 1e-12);
    assert!((r.rhs - 0.375).abs() < 1e-12);
    assert!(r.violated);
    let s = sequential_logical_bell(LogicalAngles::standard());
    assert!((s.bell.not_a2_not_b2 - 5.0 / 16.0).abs() < 1e-12);
    assert!(!s.bell.violated);
}

#[test]
fn sequential_version_never_violates() {
    let mut r = rng::stream(0x5e90, &[]);
    let n = 20;
    for _ in 0..n * n * n * n {
        let a: [f64; 4] = std::array::from_fn(|_| r.random_range(0.0..2.0 * PI));
        let s = sequential_logical_bell(LogicalAngles::new(a[0], a[1], a[2], a[3]));
        assert!(s.bell.lhs <= s.bell.rhs + 1e-12, "{a:?}");
    }
}

fn appleby_oracle(p: [f64; 3]) -> f64 {
    let [a, b, c] = p;
    (1.0 - a) * b * c + a * (1.0 - b) * c + a * b * (1.0 - c)
}

#[test]
fn appleby_examples_and_grid() {
    assert_eq!(appleby_prob_sum_two([1.0, 1.0, 0.0]).unwrap(), 1.0);
    assert!((appleby_prob_sum_two([0.5; 3]).unwrap() - 0.375).abs() < 1e-15);
    assert!(appleby_prob_sum_two([1.2, 0.0, 0.0]).is_err());

    let steps = 100;
    let mut sup = 0.0f64;
    let mut outside = 0.0f64;
    for i in 0..=steps {
        for j in 0..=steps {
            for k in 0..=steps {
                let p = [i, j, k].map(|x| x as f64 / steps as f64);
                let v = appleby_oracle(p);
                if is_violating(p) {
                    sup = sup.max(v);
                } else {
                    outside = outside.max(v);
                }
            }
        }
    }
    let g = appleby_grid_sup(steps);
    assert!(g.sup <= 0.5 + 1e-9);
    assert!((g.sup - sup).abs() < 1e-12);
    assert!((sup - 0.5).abs() < 1e-3);
    assert!(outside > 0.5);
}

#[test]
fn triad_coefficient_is_four_fifty_fifths() {
    assert_eq!(triad_coefficient(), BigRational::new(BigInt::from(4), BigInt::from(55)));
    let b = fwt_bounds(0.0, 0.0).unwrap();
    assert!(b.satisfied);
    assert!((b.f_min - 1.0 / 1320.0).abs() < 1e-18);
    assert!(!fwt_bounds(0.01, 0.0).unwrap().satisfied);
    assert!(fwt_bounds(-0.1, 0.0).is_err());
}
