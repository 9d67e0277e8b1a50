use serde::Serialize;

use crate::quantum::{singlet, spin_operator, tensor, ComplexMatrix};

/// Singlet probability that both planar spins come out `+` (or both `−`):
/// `¼(1 − cos(θa − θb))`.
pub fn joint_same(theta_a: f64, theta_b: f64) -> f64 {
    0.25 * (1.0 - (theta_a - theta_b).cos())
}

/// Angles for the two propositions on each side: `A_i` is "first spin up
/// along `first[i]`", `B_i` is "second spin up along `second[i]`".
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogicalAngles {
    pub first: [f64; 2],
    pub second: [f64; 2],
}

impl LogicalAngles {
    pub fn new(a1: f64, a2: f64, b1: f64, b2: f64) -> Self {
        Self {
            first: [a1, a2],
            second: [b1, b2],
        }
    }

    /// `(0, 2π/3, π, π/3)`.
    pub fn standard() -> Self {
        use std::f64::consts::PI;
        Self::new(0.0, 2.0 * PI / 3.0, PI, PI / 3.0)
    }
}

/// `P(A₁∧B₁) ≤ P(A₁∧B₂) + P(A₂∧B₁) + P(¬A₂∧¬B₂)` evaluated on the singlet.
#[derive(Clone, Debug, Serialize)]
pub struct LogicalBell {
    pub lhs: f64,
    pub a1_b2: f64,
    pub a2_b1: f64,
    pub not_a2_not_b2: f64,
    pub rhs: f64,
    pub violated: bool,
}

impl LogicalBell {
    fn from_terms(lhs: f64, a1_b2: f64, a2_b1: f64, not_a2_not_b2: f64) -> Self {
        let rhs = a1_b2 + a2_b1 + not_a2_not_b2;
        Self {
            lhs,
            a1_b2,
            a2_b1,
            not_a2_not_b2,
            rhs,
            violated: lhs > rhs + crate::tolerance::ARITHMETIC,
        }
    }
}

/// Every conjunction read off as a joint single measurement on the singlet.
pub fn logical_bell(angles: LogicalAngles) -> LogicalBell {
    let [a1, a2] = angles.first;
    let [b1, b2] = angles.second;
    LogicalBell::from_terms(joint_same(a1, b1), joint_same(a1, b2), joint_same(a2, b1), joint_same(a2, b2))
}

/// As [`LogicalBell`], with `P(¬A₂∧¬B₂)` split by the unread first outcomes.
#[derive(Clone, Debug, Serialize)]
pub struct SequentialLogicalBell {
    #[serde(flatten)]
    pub bell: LogicalBell,
    /// `terms[s][t]` for first-measurement outcomes `s, t` (0 = `+`, 1 = `−`).
    pub not_a2_not_b2_terms: [[f64; 2]; 2],
}

fn expectation(op: &ComplexMatrix) -> f64 {
    let psi = singlet();
    psi.dotc(&op.apply(&psi)).re
}

/// Each side measures its first setting, then its second. Probabilities
/// involving a second setting sum the sandwich `P₁ P₂ P₁` over the first
/// outcome.
pub fn sequential_logical_bell(angles: LogicalAngles) -> SequentialLogicalBell {
    let planar = |t: f64| spin_operator(t, std::f64::consts::FRAC_PI_2);
    let [sa1, sa2] = angles.first.map(planar);
    let [sb1, sb2] = angles.second.map(planar);
    let sandwich = |outer: &ComplexMatrix, inner: &ComplexMatrix| outer * &(inner * outer);
    let joint = |a: &ComplexMatrix, b: &ComplexMatrix| expectation(&tensor(a, b).expect("4x4"));
    let first_then = |s1: &crate::quantum::SpinObservable, s2: &crate::quantum::SpinObservable, up: bool| {
        [true, false].map(|s| sandwich(s1.outcome(s).matrix(), s2.outcome(up).matrix()))
    };

    let lhs = joint(sa1.up.matrix(), sb1.up.matrix());
    let b2_up = first_then(&sb1, &sb2, true);
    let a1_b2 = b2_up.iter().map(|b| joint(sa1.up.matrix(), b)).sum();
    let a2_up = first_then(&sa1, &sa2, true);
    let a2_b1 = a2_up.iter().map(|a| joint(a, sb1.up.matrix())).sum();
    let a2_down = first_then(&sa1, &sa2, false);
    let b2_down = first_then(&sb1, &sb2, false);
    let mut terms = [[0.0; 2]; 2];
    for (s, a) in a2_down.iter().enumerate() {
        for (t, b) in b2_down.iter().enumerate() {
            terms[s][t] = joint(a, b);
        }
    }
    let not_a2_not_b2 = terms.iter().flatten().sum();
    SequentialLogicalBell {
        bell: LogicalBell::from_terms(lhs, a1_b2, a2_b1, not_a2_not_b2),
        not_a2_not_b2_terms: terms,
    }
}
