use rayon::prelude::*;
use serde::Serialize;

use super::{ContextFunction, ContextLattice, LogicError, Variant};
use crate::rng;

const LAWS_STREAM: u64 = 0x4c41_5753;
/// Elements enumerated before exhaustive checking gives up.
pub const ENUMERATION_LIMIT: usize = 4096;
const MAX_REPORTED: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every triple of the enumerated element set.
    Exhaustive,
    /// `triples` random triples drawn with `seed`.
    Sampled { triples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Commutativity,
    Associativity,
    Absorption,
    Idempotence,
    Bounds,
    Distributivity,
    Adjunction,
    /// Outputs of the operations are again elements.
    Closure,
    /// `¬S = ⊥` for `S ≠ ⊥` and `¬⊥ = ⊤` (L3 only).
    NegationCollapse,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawFailure {
    pub law: Law,
    pub triple: [ContextFunction; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub variant: Variant,
    pub contexts: usize,
    pub exhaustive: bool,
    /// Size of the element set when enumerated.
    pub elements: Option<usize>,
    /// Elements equal to their double negation, when enumerated.
    pub regular_elements: Option<usize>,
    pub triples_checked: u64,
    pub failure_count: u64,
    /// The first few failures in triple order.
    pub failures: Vec<LawFailure>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

fn check_triple(l: &ContextLattice, s: &ContextFunction, t: &ContextFunction, r: &ContextFunction) -> Vec<Law> {
    let mut bad = Vec::new();
    let (bot, top) = (l.bottom(), l.top());
    if l.join(s, t) != l.join(t, s) || l.meet(s, t) != l.meet(t, s) {
        bad.push(Law::Commutativity);
    }
    if l.join(&l.join(s, t), r) != l.join(s, &l.join(t, r)) || l.meet(&l.meet(s, t), r) != l.meet(s, &l.meet(t, r)) {
        bad.push(Law::Associativity);
    }
    if l.join(s, &l.meet(s, t)) != *s || l.meet(s, &l.join(s, t)) != *s {
        bad.push(Law::Absorption);
    }
    if l.join(s, s) != *s || l.meet(s, s) != *s {
        bad.push(Law::Idempotence);
    }
    if !l.le(&bot, s) || !l.le(s, &top) {
        bad.push(Law::Bounds);
    }
    if l.meet(s, &l.join(t, r)) != l.join(&l.meet(s, t), &l.meet(s, r)) {
        bad.push(Law::Distributivity);
    }
    let t_to_r = l.implies(t, r);
    if l.le(&l.meet(s, t), r) != l.le(s, &t_to_r) {
        bad.push(Law::Adjunction);
    }
    let outputs = [l.join(s, t), l.meet(s, t), t_to_r, l.negate(s)];
    if outputs.iter().any(|o| l.validate(o).is_err()) {
        bad.push(Law::Closure);
    }
    if l.variant() == Variant::L3 {
        let want = if *s == bot { top } else { bot };
        if l.negate(s) != want {
            bad.push(Law::NegationCollapse);
        }
    }
    bad
}

/// Check the lattice and Heyting laws on triples of elements.
pub fn check_heyting_laws(lattice: &ContextLattice, mode: CheckMode) -> Result<LawReport, LogicError> {
    let (elements, triples): (Option<Vec<ContextFunction>>, Vec<[ContextFunction; 3]>) = match mode {
        CheckMode::Exhaustive => {
            let all = lattice.enumerate(ENUMERATION_LIMIT)?;
            let mut ts = Vec::with_capacity(all.len().pow(3));
            for s in &all {
                for t in &all {
                    for r in &all {
                        ts.push([s.clone(), t.clone(), r.clone()]);
                    }
                }
            }
            (Some(all), ts)
        }
        CheckMode::Sampled { triples, seed } => {
            let ts = (0..triples)
                .map(|i| {
                    let mut r = rng::stream(seed, &[LAWS_STREAM, i as u64]);
                    [lattice.sample(&mut r), lattice.sample(&mut r), lattice.sample(&mut r)]
                })
                .collect();
            (None, ts)
        }
    };
    let results: Vec<Vec<Law>> = triples.par_iter().map(|[s, t, r]| check_triple(lattice, s, t, r)).collect();
    let mut failures = Vec::new();
    let mut failure_count = 0u64;
    for (triple, bad) in triples.iter().zip(&results) {
        for &law in bad {
            failure_count += 1;
            if failures.len() < MAX_REPORTED {
                failures.push(LawFailure {
                    law,
                    triple: triple.clone(),
                });
            }
        }
    }
    let regular_elements = elements
        .as_ref()
        .map(|all| all.iter().filter(|s| lattice.negate(&lattice.negate(s)) == **s).count());
    Ok(LawReport {
        variant: lattice.variant(),
        contexts: lattice.poset().len(),
        exhaustive: elements.is_some(),
        elements: elements.as_ref().map(Vec::len),
        regular_elements,
        triples_checked: triples.len() as u64,
        failure_count,
        failures,
    })
}
