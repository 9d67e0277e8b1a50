use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::quantum::{singlet, spin_operator, tensor};

/// Measurement axis `(cos θ sin φ, sin θ sin φ, cos φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleSetting {
    pub theta: f64,
    pub phi: f64,
}

impl AngleSetting {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// An axis in the equatorial plane, `φ = π/2`.
    pub fn planar(theta: f64) -> Self {
        Self::new(theta, FRAC_PI_2)
    }

    pub fn axis(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [ct * sp, st * sp, cp]
    }
}

/// Singlet correlation `⟨σ_a ⊗ σ_b⟩` in closed form.
pub fn singlet_correlation(a: AngleSetting, b: AngleSetting) -> f64 {
    -a.phi.cos() * b.phi.cos() - (a.theta - b.theta).cos() * a.phi.sin() * b.phi.sin()
}

/// The same correlation computed as `⟨ψ, (σ_a ⊗ σ_b) ψ⟩`.
pub fn singlet_correlation_matrix(a: AngleSetting, b: AngleSetting) -> f64 {
    let sa = spin_operator(a.theta, a.phi).sigma;
    let sb = spin_operator(b.theta, b.phi).sigma;
    let op = tensor(&sa, &sb).expect("4x4 fits");
    let psi = singlet();
    psi.dotc(&op.apply(&psi)).re
}

/// Four planar settings: two for the first side, two for the second.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChshAngles {
    pub first: f64,
    pub first_alt: f64,
    pub second: f64,
    pub second_alt: f64,
}

impl ChshAngles {
    pub fn new(first: f64, first_alt: f64, second: f64, second_alt: f64) -> Self {
        Self {
            first,
            first_alt,
            second,
            second_alt,
        }
    }

    /// The settings `(0, π/2, 7π/4, 5π/4)` reaching `2√2`.
    pub fn maximal() -> Self {
        use std::f64::consts::PI;
        Self::new(0.0, FRAC_PI_2, 7.0 * PI / 4.0, 5.0 * PI / 4.0)
    }
}

fn planar_correlation(a: f64, b: f64) -> f64 {
    -(a - b).cos()
}

/// `|E(a,b) − E(a,b′)| + |E(a′,b) + E(a′,b′)|` for planar singlet correlations.
pub fn chsh_value(angles: ChshAngles) -> f64 {
    let e = planar_correlation;
    let ChshAngles {
        first: a,
        first_alt: ap,
        second: b,
        second_alt: bp,
    } = angles;
    (e(a, b) - e(a, bp)).abs() + (e(ap, b) + e(ap, bp)).abs()
}

#[derive(Clone, Debug, Serialize)]
pub struct GridMaximum {
    pub steps: usize,
    pub value: f64,
    pub angles: ChshAngles,
    /// Number of angle quadruples the maximum ranges over.
    pub points_covered: u128,
}

/// Maximum of [`chsh_value`] over all quadruples of multiples of `2π/steps`.
///
/// The value depends only on angle differences modulo the grid, so fixing
/// the first angle at 0 visits every value of the full `steps⁴` grid.
pub fn chsh_grid_max(steps: usize) -> GridMaximum {
    let cos: Vec<f64> = (0..steps).map(|k| (TAU * k as f64 / steps as f64).cos()).collect();
    let diff = |x: usize, y: usize| cos[(x + steps - y) % steps];
    let (value, (ap, b, bp)) = (0..steps)
        .into_par_iter()
        .map(|ap| {
            let mut best = (f64::NEG_INFINITY, (ap, 0, 0));
            for b in 0..steps {
                for bp in 0..steps {
                    let v = (-diff(0, b) + diff(0, bp)).abs() + (diff(ap, b) + diff(ap, bp)).abs();
                    if v > best.0 {
                        best = (v, (ap, b, bp));
                    }
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, (0, 0, 0)),
            |x, y| if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x },
        );
    let angle = |k: usize| TAU * k as f64 / steps as f64;
    GridMaximum {
        steps,
        value,
        angles: ChshAngles::new(0.0, angle(ap), angle(b), angle(bp)),
        points_covered: (steps as u128).pow(4),
    }
}
