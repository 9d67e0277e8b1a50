use proptest::prelude::*;

use qfoundry_core::exact::{BuiltinSet, VectorSet};
use qfoundry_core::ks::{
    build_orth_structure, cabello_parity_witness, complete_pairs_to_triads, count_colorings, count_problem,
    search_coloring, search_problem, ColoringProblem, SearchOutcome,
};

/// Orthogonality relations recomputed in floating point.
fn float_relations(set: &VectorSet) -> (usize, Vec<[usize; 3]>, Vec<(usize, usize)>) {
    let v: Vec<Vec<f64>> = set.vectors().iter().map(|x| x.to_f64()).collect();
    let n = v.len();
    let orth = |i: usize, j: usize| v[i].iter().zip(&v[j]).map(|(a, b)| a * b).sum::<f64>().abs() < 1e-9;
    let mut triads = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orth(i, j) && orth(i, k) && orth(j, k) {
                    triads.push([i, j, k]);
                }
            }
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if orth(i, j) && !triads.iter().any(|t| t.contains(&i) && t.contains(&j)) {
                pairs.push((i, j));
            }
        }
    }
    (n, triads, pairs)
}

/// Plain depth-first count over vertices in index order.
fn naive_count(n: usize, bases: &[Vec<usize>], pairs: &[(usize, usize)]) -> u128 {
    fn ok(assign: &[u8], bases: &[Vec<usize>], pairs: &[(usize, usize)]) -> bool {
        let k = assign.len();
        for b in bases {
            let ones = b.iter().filter(|&&i| i < k && assign[i] == 1).count();
            let complete = b.iter().all(|&i| i < k);
            if ones > 1 || (complete && ones != 1) {
                return false;
            }
        }
        pairs.iter().all(|&(i, j)| !(i < k && j < k && assign[i] == 1 && assign[j] == 1))
    }
    fn go(assign: &mut Vec<u8>, n: usize, bases: &[Vec<usize>], pairs: &[(usize, usize)]) -> u128 {
        if !ok(assign, bases, pairs) {
            return 0;
        }
        if assign.len() == n {
            return 1;
        }
        let mut total = 0;
        for c in [0, 1] {
            assign.push(c);
            total += go(assign, n, bases, pairs);
            assign.pop();
        }
        total
    }
    go(&mut Vec::new(), n, bases, pairs)
}

#[test]
fn embedded_sets_are_uncolorable() {
    for b in [BuiltinSet::Peres33, BuiltinSet::Cabello18] {
        let s = build_orth_structure(&b.load()).unwrap();
        assert!(!search_coloring(&s).is_colorable());
        assert_eq!(count_colorings(&s).unwrap(), 0);
    }
}

#[test]
fn structure_matches_float_relations() {
    for b in [BuiltinSet::Peres33, BuiltinSet::Cabello18] {
        let set = b.load();
        let s = build_orth_structure(&set).unwrap();
        let (_, triads, pairs) = float_relations(&set);
        if s.dimension() == 3 {
            assert_eq!(s.bases().len(), triads.len());
            assert_eq!(s.pairs().len(), pairs.len());
        }
    }
}

#[test]
fn peres_without_two_vectors_has_48_colorings() {
    let set = BuiltinSet::Peres33.load().without_labels(&["g_2^3", "g_2^2"]);
    let (n, triads, pairs) = float_relations(&set);
    let bases: Vec<Vec<usize>> = triads.iter().map(|t| t.to_vec()).collect();
    let oracle = naive_count(n, &bases, &pairs);
    assert_eq!(oracle, 48);
    let s = build_orth_structure(&set).unwrap();
    assert_eq!(count_colorings(&s).unwrap(), oracle);
    match search_coloring(&s) {
        SearchOutcome::Colorable { coloring, .. } => assert!(coloring.is_valid_for(s.problem())),
        other => panic!("expected a colouring, got {other:?}"),
    }
}

#[test]
fn cabello_parity() {
    let s = build_orth_structure(&BuiltinSet::Cabello18.load()).unwrap();
    let w = cabello_parity_witness(&s).unwrap();
    assert_eq!(w.bases, 9);
    assert!(w.bases_odd);
    assert!(w.membership_counts.iter().all(|&c| c == 2));
    assert!(w.uncolorable);
}

#[test]
fn completing_triads_keeps_peres_uncolorable() {
    let s = build_orth_structure(&BuiltinSet::Peres33.load()).unwrap();
    let t = complete_pairs_to_triads(&s).unwrap();
    assert!(t.pairs().is_empty());
    assert!(t.bases().len() >= s.bases().len());
    assert!(!search_coloring(&t).is_colorable());
}

#[test]
fn json_round_trip_preserves_structure() {
    let set = BuiltinSet::Cabello18.load();
    let back = VectorSet::from_json(&set.to_json().unwrap()).unwrap();
    assert_eq!(back.vectors(), set.vectors());
}

fn problem_strategy() -> impl Strategy<Value = (usize, Vec<Vec<usize>>, Vec<(usize, usize)>)> {
    (2usize..=12).prop_flat_map(|n| {
        let basis = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n.min(4));
        let pair = (0..n, 0..n).prop_filter("distinct", |(a, b)| a != b);
        (
            Just(n),
            proptest::collection::vec(basis, 0..6),
            proptest::collection::vec(pair, 0..6),
        )
    })
}

fn brute_force(n: usize, bases: &[Vec<usize>], pairs: &[(usize, usize)]) -> u128 {
    (0u32..1 << n)
        .filter(|&m| {
            let one = |i: usize| m >> i & 1 == 1;
            bases.iter().all(|b| b.iter().filter(|&&i| one(i)).count() == 1)
                && pairs.iter().all(|&(i, j)| !(one(i) && one(j)))
        })
        .count() as u128
}

proptest! {
    #[test]
    fn search_and_count_agree_with_brute_force((n, bases, pairs) in problem_strategy()) {
        let p = ColoringProblem::new(n, bases.clone(), pairs.clone()).unwrap();
        let expected = brute_force(n, &bases, &pairs);
        let (count, _) = count_problem(&p).unwrap();
        prop_assert_eq!(count, expected);
        let outcome = search_problem(&p);
        prop_assert_eq!(outcome.is_colorable(), expected > 0);
        if let SearchOutcome::Colorable { coloring, .. } = outcome {
            prop_assert!(coloring.is_valid_for(&p));
        }
    }

    #[test]
    fn relabelling_preserves_counts((n, bases, pairs) in problem_strategy(), shift in 0usize..12) {
        let p = ColoringProblem::new(n, bases, pairs).unwrap();
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let q = p.permuted(&perm).unwrap();
        prop_assert_eq!(count_problem(&p).unwrap().0, count_problem(&q).unwrap().0);
    }
}
