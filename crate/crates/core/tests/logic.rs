use std::f64::consts::FRAC_1_SQRT_2;

use proptest::prelude::*;

use qfoundry_core::logic::{
    check_heyting_laws, l1_double_negation, ql_join, ql_meet, ql_ortho, CheckMode, ContextFunction, ContextLattice,
    ContextPoset, Subspace, Variant,
};
use qfoundry_core::quantum::{random_basis, real_vector, CVector, ProjectionOp};
use qfoundry_core::rng;

fn qubit_bases() -> Vec<Vec<CVector>> {
    vec![
        vec![real_vector(&[1.0, 0.0]), real_vector(&[0.0, 1.0])],
        vec![real_vector(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]), real_vector(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2])],
    ]
}

fn qubit_lattice(variant: Variant) -> ContextLattice {
    ContextLattice::new(ContextPoset::generate(2, &qubit_bases()).unwrap(), variant)
}

fn random_subspace(dim: usize, rank: usize, seed: u64) -> Subspace {
    let b = random_basis(dim, &mut rng::stream(seed, &[dim as u64, rank as u64]));
    Subspace::new(ProjectionOp::from_orthonormal(dim, &b[..rank]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orthomodular_law(dim in 2usize..=4, seed in any::<u64>(), r in 0usize..=4, extra in 0usize..=4) {
        let basis = random_basis(dim, &mut rng::stream(seed, &[]));
        let small = r.min(dim);
        let big = (small + extra).min(dim);
        let p = Subspace::new(ProjectionOp::from_orthonormal(dim, &basis[..small]));
        let q = Subspace::span(dim, &basis[..big]).unwrap();
        prop_assert!(p.le(&q));
        let rebuilt = ql_join(&p, &ql_meet(&q, &ql_ortho(&p)).unwrap()).unwrap();
        prop_assert!(rebuilt.approx_eq(&q));
    }

    #[test]
    fn lattice_bounds_on_random_pairs(dim in 2usize..=4, ra in 0usize..=4, rb in 0usize..=4, seed in any::<u64>()) {
        let a = random_subspace(dim, ra.min(dim), seed);
        let b = random_subspace(dim, rb.min(dim), seed ^ 1);
        let meet = ql_meet(&a, &b).unwrap();
        let join = ql_join(&a, &b).unwrap();
        prop_assert!(meet.le(&a) && meet.le(&b));
        prop_assert!(a.le(&join) && b.le(&join));
        prop_assert!(ql_ortho(&ql_ortho(&a)).approx_eq(&a));
        prop_assert!(ql_meet(&a, &ql_ortho(&a)).unwrap().approx_eq(&Subspace::zero(dim)));
        prop_assert_eq!(meet.rank() + join.rank(), a.rank() + b.rank());
    }
}

#[test]
fn qubit_examples() {
    let e1 = Subspace::span(2, &[real_vector(&[1.0, 0.0])]).unwrap();
    let e2 = Subspace::span(2, &[real_vector(&[0.0, 1.0])]).unwrap();
    assert!(ql_join(&e1, &e2).unwrap().approx_eq(&Subspace::full(2)));
    let f = Subspace::span(2, &[real_vector(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])]).unwrap();
    let lhs = ql_meet(&f, &ql_join(&e1, &ql_ortho(&e1)).unwrap()).unwrap();
    let rhs = ql_join(&ql_meet(&f, &e1).unwrap(), &ql_meet(&f, &ql_ortho(&e1)).unwrap()).unwrap();
    assert!(lhs.approx_eq(&f));
    assert!(rhs.approx_eq(&Subspace::zero(2)));
}

#[test]
fn double_negation_examples() {
    let e1 = Subspace::span(2, &[real_vector(&[1.0, 0.0])]).unwrap();
    let e2 = Subspace::span(2, &[real_vector(&[0.0, 1.0])]).unwrap();
    let single = l1_double_negation(2, std::slice::from_ref(&e1)).unwrap();
    assert!(single.regular && single.closure.approx_eq(&e1));
    let pair = l1_double_negation(2, &[e1.clone(), e2]).unwrap();
    assert!(!pair.regular && pair.closure.approx_eq(&Subspace::full(2)));
    let zero = l1_double_negation(2, &[Subspace::zero(2)]).unwrap();
    assert!(zero.regular && zero.closure.approx_eq(&Subspace::zero(2)));
    assert!(l1_double_negation(2, &vec![e1; 9]).is_err());
}

#[test]
fn double_negation_is_minimal() {
    for seed in 0..20u64 {
        let dim = 4;
        let comps: Vec<Subspace> = (0..3).map(|k| random_subspace(dim, 1, seed * 3 + k)).collect();
        let closure = l1_double_negation(dim, &comps).unwrap().closure;
        assert!(comps.iter().all(|c| c.le(&closure)));
        for mask in 1u32..8 {
            let mut candidate = Subspace::zero(dim);
            for (k, c) in comps.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    candidate = ql_join(&candidate, c).unwrap();
                }
            }
            if comps.iter().all(|c| c.le(&candidate)) {
                assert!(closure.le(&candidate));
            }
        }
    }
}

#[test]
fn l3_negation_collapses() {
    let l = qubit_lattice(Variant::L3);
    let all = l.enumerate(4096).unwrap();
    assert_eq!(all.len(), 17);
    assert_eq!(l.negate(&l.bottom()), l.top());
    for s in &all {
        l.validate(s).unwrap();
        if *s != l.bottom() {
            assert_eq!(l.negate(s), l.bottom());
        }
        assert_eq!(l.implies(s, s), l.top());
        let nn = l.negate(&l.negate(s));
        assert!(nn == l.bottom() || nn == l.top());
    }
}

#[test]
fn l3_embedding_of_a_basis_projection() {
    let l = qubit_lattice(Variant::L3);
    let p = ProjectionOp::onto(&real_vector(&[1.0, 0.0])).unwrap();
    let s = l.embed_projection(&p);
    l.validate(&s).unwrap();
    let poset = l.poset();
    for (c, ctx) in poset.contexts().iter().enumerate() {
        let value = ctx.projection(s.values[c]);
        if ctx.label == "basis0" {
            assert!(value.approx_eq(&p));
        } else {
            assert_eq!(s.values[c], poset.full_mask(c));
        }
    }
}

/// Greatest `x` with `x ∧ a ≤ b`, by search over all elements.
fn greatest_implication(l: &ContextLattice, all: &[ContextFunction], a: &ContextFunction, b: &ContextFunction) -> ContextFunction {
    let below: Vec<&ContextFunction> = all.iter().filter(|x| l.le(&l.meet(x, a), b)).collect();
    let top = below
        .iter()
        .find(|x| below.iter().all(|y| l.le(y, x)))
        .expect("a greatest element exists");
    (*top).clone()
}

#[test]
fn l2_implication_is_the_greatest_solution() {
    for dim_bases in [(2usize, qubit_bases()), (3, vec![random_basis(3, &mut rng::stream(5, &[]))])] {
        let (dim, bases) = dim_bases;
        let l = ContextLattice::new(ContextPoset::generate(dim, &bases).unwrap(), Variant::L2);
        let all = l.enumerate(4096).unwrap();
        for a in &all {
            assert_eq!(l.implies(&l.top(), a), *a);
            for b in &all {
                assert_eq!(l.implies(a, b), greatest_implication(&l, &all, a, b));
            }
        }
    }
}

#[test]
fn l2_value_at_a_maximal_context_forces_zero_below() {
    let l = qubit_lattice(Variant::L2);
    let poset = l.poset();
    let z_plus = ProjectionOp::onto(&real_vector(&[1.0, 0.0])).unwrap();
    let maximal = poset.contexts().iter().position(|c| c.label == "basis0").unwrap();
    let trivial = poset.contexts().iter().position(|c| c.atom_count() == 1).unwrap();
    let mut seen = 0;
    for s in l.enumerate(4096).unwrap() {
        if poset.context(maximal).projection(s.values[maximal]).approx_eq(&z_plus) {
            seen += 1;
            assert_eq!(s.values[trivial], 0);
        }
    }
    assert!(seen > 0);
}

#[test]
fn sampled_laws_on_a_qutrit_poset() {
    let b = vec![
        (0..3)
            .map(|k| {
                let mut v = [0.0; 3];
                v[k] = 1.0;
                real_vector(&v)
            })
            .collect(),
        random_basis(3, &mut rng::stream(17, &[])),
    ];
    let poset = ContextPoset::generate(3, &b).unwrap();
    for variant in [Variant::L2, Variant::L3] {
        let l = ContextLattice::new(poset.clone(), variant);
        let r = check_heyting_laws(&l, CheckMode::Sampled { triples: 500, seed: 3 }).unwrap();
        assert!(r.passed(), "{variant:?}: {:?}", r.failures);
        let mut rr = rng::stream(4, &[]);
        for _ in 0..50 {
            let (s, t) = (l.sample(&mut rr), l.sample(&mut rr));
            l.validate(&l.join(&s, &t)).unwrap();
            l.validate(&l.meet(&s, &t)).unwrap();
            l.validate(&l.implies(&s, &t)).unwrap();
        }
    }
}

#[test]
fn exhaustive_laws_on_the_qubit_poset() {
    for variant in [Variant::L2, Variant::L3] {
        let r = check_heyting_laws(&qubit_lattice(variant), CheckMode::Exhaustive).unwrap();
        assert!(r.passed());
        assert_eq!(r.elements, Some(17));
    }
}
