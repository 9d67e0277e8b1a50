use std::sync::Arc;

use proptest::prelude::*;

use qfoundry_core::mkc::{
    generate_anchored_family, generate_basis_family, min_commutator_norm, mkc_probability, simulate_sequence,
    BornWeights, FamilyElement, Valuation, ValuationSeed,
};
use qfoundry_core::quantum::{born_probability, random_density, real_vector, ComplexMatrix, DensityOperator};
use qfoundry_core::rng;

#[test]
fn generated_family_is_totally_incompatible() {
    let f = generate_basis_family(3, 12, 5).unwrap();
    for a in 0..f.len() {
        for b in a + 1..f.len() {
            assert!(min_commutator_norm(f.basis(a), f.basis(b)) > 1e-8);
        }
    }
}

#[test]
fn closed_form_matches_born_rule_on_family_elements() {
    let f = generate_basis_family(3, 6, 8).unwrap();
    let rho = random_density(3, &mut rng::stream(8, &[1]));
    for m in 0..f.len() {
        for atoms in 1u32..7 {
            let p = f.projector(m, atoms);
            let exact = born_probability(&rho, &p).unwrap();
            assert!((mkc_probability(&rho, &f, &p).unwrap() - exact).abs() < 1e-12);
            assert_eq!(f.locate(&p).unwrap(), FamilyElement::InBasis { basis: m, atoms });
        }
    }
}

#[test]
fn valuation_frequencies_follow_born_weights() {
    let f = generate_basis_family(3, 4, 21).unwrap();
    let rho = random_density(3, &mut rng::stream(21, &[1]));
    let weights = Arc::new(BornWeights::new(&rho, &f).unwrap());
    let n = 20_000u64;
    for m in 0..f.len() {
        let mut counts = [0u64; 3];
        for s in 0..n {
            let mut v = Valuation::from_weights(weights.clone(), ValuationSeed::new(21, s));
            counts[v.selected(m)] += 1;
        }
        for (j, &c) in counts.iter().enumerate() {
            let p = weights.weights(m)[j];
            let sigma = (p * (1.0 - p) / n as f64).sqrt();
            assert!((c as f64 / n as f64 - p).abs() <= 4.0 * sigma + 1e-12, "basis {m} atom {j}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn valuation_ignores_query_order(seed in any::<u64>(), stream in any::<u64>(), order in Just((0usize..8).collect::<Vec<_>>()).prop_shuffle()) {
        let f = generate_basis_family(3, 8, 3).unwrap();
        let w = Arc::new(BornWeights::new(&DensityOperator::maximally_mixed(3), &f).unwrap());
        let mut forward = Valuation::from_weights(w.clone(), ValuationSeed::new(seed, stream));
        let mut shuffled = Valuation::from_weights(w, ValuationSeed::new(seed, stream));
        let a: Vec<usize> = (0..8).map(|m| forward.selected(m)).collect();
        let mut b = vec![0; 8];
        for &m in &order {
            b[m] = shuffled.selected(m);
        }
        prop_assert_eq!(a, b);
    }

    #[test]
    fn family_prefix_is_stable(seed in any::<u64>(), short in 1usize..6) {
        let small = generate_basis_family(3, short, seed).unwrap();
        let large = generate_basis_family(3, short + 3, seed).unwrap();
        for m in 0..short {
            for (u, v) in small.basis(m).iter().zip(large.basis(m)) {
                prop_assert!((u - v).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn one_atom_valued_per_basis(seed in any::<u64>()) {
        let f = generate_basis_family(4, 5, 1).unwrap();
        let w = Arc::new(BornWeights::new(&random_density(4, &mut rng::stream(seed, &[])), &f).unwrap());
        let mut v = Valuation::from_weights(w, ValuationSeed::new(seed, 0));
        for m in 0..f.len() {
            let ones: u8 = (0..4).map(|j| v.value_in_basis(m, 1 << j)).sum();
            prop_assert_eq!(ones, 1);
            prop_assert_eq!(v.value_in_basis(m, 0b1111), 1);
        }
    }
}

#[test]
fn sequence_statistics_are_normalised_and_reproducible() {
    let f = generate_basis_family(3, 16, 4).unwrap();
    let rho = random_density(3, &mut rng::stream(4, &[1]));
    let z = ComplexMatrix::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 0.0]]).unwrap();
    let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]).unwrap();
    let program = [z, x];
    let a = simulate_sequence(&rho, &program, &f, 4, 5000).unwrap();
    let count: u64 = a.outcomes.iter().map(|r| r.count).sum();
    assert_eq!(count, 5000);
    let exact: f64 = a.outcomes.iter().map(|r| r.exact).sum();
    assert!((exact - 1.0).abs() < 1e-9);
    assert!(a.total_variation < 0.05, "{}", a.total_variation);
    let b = simulate_sequence(&rho, &program, &f, 4, 5000).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(simulate_sequence(&rho, &[], &f, 4, 10).is_err());
}

#[test]
fn anchored_family_contains_its_anchors() {
    let s = 1.0 / 3f64.sqrt();
    let e1 = real_vector(&[s, s, s]);
    let f = generate_anchored_family(3, 4, 2, &[vec![e1.clone()]]).unwrap();
    assert!(f.basis(0).iter().any(|v| (v.dotc(&e1).norm() - 1.0).abs() < 1e-12));
    assert!(generate_anchored_family(3, 1, 2, &[vec![e1.clone()], vec![e1]]).is_err());
}
