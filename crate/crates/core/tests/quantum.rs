use proptest::prelude::*;

use qfoundry_core::quantum::{
    born_probability, collapse, ks_single_generator, random_basis, random_density, random_pure_vector,
    reconstruct_state, tensor, ComplexMatrix, DensityOperator, ProjectionOp,
};
use qfoundry_core::rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reconstruction_recovers_random_states(dim in 2usize..=4, seed in any::<u64>()) {
        let mut r = rng::stream(seed, &[1]);
        let rho = random_density(dim, &mut r);
        let basis = random_basis(dim, &mut r);
        let got = reconstruct_state(|a| rho.expectation(a).unwrap(), &basis).unwrap();
        prop_assert!(got.matrix().max_entry_distance(rho.matrix()) < 1e-10);
    }

    #[test]
    fn born_weights_over_a_basis_sum_to_one(dim in 2usize..=5, seed in any::<u64>()) {
        let mut r = rng::stream(seed, &[2]);
        let rho = random_density(dim, &mut r);
        let total: f64 = random_basis(dim, &mut r)
            .iter()
            .map(|v| born_probability(&rho, &ProjectionOp::onto(v).unwrap()).unwrap())
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn collapse_is_idempotent(dim in 2usize..=4, seed in any::<u64>()) {
        let mut r = rng::stream(seed, &[3]);
        let rho = random_density(dim, &mut r);
        let basis = random_basis(dim, &mut r);
        let p = ProjectionOp::from_orthonormal(dim, &basis[..dim / 2 + 1]);
        let once = collapse(&rho, &p).unwrap();
        prop_assert!((born_probability(&once, &p).unwrap() - 1.0).abs() < 1e-12);
        let twice = collapse(&once, &p).unwrap();
        prop_assert!(twice.matrix().max_entry_distance(once.matrix()) < 1e-12);
    }

    #[test]
    fn single_generator_recovers_projections(n in 1usize..=5, seed in any::<u64>()) {
        let mut r = rng::stream(seed, &[4]);
        let basis = random_basis(6, &mut r);
        let ps: Vec<ProjectionOp> = basis[..n].iter().map(|v| ProjectionOp::onto(v).unwrap()).collect();
        let g = ks_single_generator(&ps).unwrap();
        prop_assert!(g.max_residual < 1e-8, "{}", g.max_residual);
        for (k, p) in ps.iter().enumerate() {
            prop_assert!(g.recovered[k].max_entry_distance(p.matrix()) < 1e-8);
        }
    }
}

#[test]
fn collapse_onto_orthogonal_outcome_fails() {
    let mut r = rng::stream(9, &[]);
    let basis = random_basis(3, &mut r);
    let rho = DensityOperator::pure(&basis[0]).unwrap();
    assert!(collapse(&rho, &ProjectionOp::onto(&basis[1]).unwrap()).is_err());
}

#[test]
fn pure_states_have_unit_purity() {
    let mut r = rng::stream(10, &[]);
    let v = random_pure_vector(4, &mut r);
    let rho = DensityOperator::pure(&v).unwrap();
    let sq = rho.matrix() * rho.matrix();
    assert!(sq.max_entry_distance(rho.matrix()) < 1e-12);
}

#[test]
fn tensor_of_identities() {
    let t = tensor(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)).unwrap();
    assert_eq!(t.dim(), 6);
    assert!(t.max_entry_distance(&ComplexMatrix::identity(6)) < 1e-15);
}

#[test]
fn generator_rejects_too_many_projections() {
    let mut r = rng::stream(11, &[]);
    let ps: Vec<ProjectionOp> = random_basis(6, &mut r).iter().map(|v| ProjectionOp::onto(v).unwrap()).collect();
    assert!(ks_single_generator(&ps).is_err());
    assert!(ks_single_generator(&[]).is_err());
}
