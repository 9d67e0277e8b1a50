use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::BellError;
use crate::meyer::{enumerate_pyth_points, meyer_color};
use crate::rng;

const APPLEBY_STREAM: u64 = 0x4150_504c;

fn check_probability(p: f64) -> Result<f64, BellError> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(BellError::ProbabilityOutOfRange(p))
    }
}

/// Probability that exactly two of three independent 0/1 outcomes with
/// `P(M_i = 1) = p_i` come out 1.
pub fn appleby_prob_sum_two(p: [f64; 3]) -> Result<f64, BellError> {
    let [a, b, c] = p.map(check_probability);
    let (a, b, c) = (a?, b?, c?);
    Ok((1.0 - a) * b * c + a * (1.0 - b) * c + a * b * (1.0 - c))
}

/// True unless exactly two of the `p_i` are at least 1/2, i.e. rounding the
/// probabilities does not give a valid triad assignment.
pub fn is_violating(p: [f64; 3]) -> bool {
    p.iter().filter(|&&x| x >= 0.5).count() != 2
}

#[derive(Clone, Debug, Serialize)]
pub struct ApplebyGridSup {
    pub steps: u32,
    pub sup: f64,
    pub argmax: [f64; 3],
    pub points_checked: u64,
}

/// Supremum of [`appleby_prob_sum_two`] over the violating points of the
/// grid `{0, 1/steps, …, 1}³`. Ties keep the first point in lexicographic order.
pub fn appleby_grid_sup(steps: u32) -> ApplebyGridSup {
    let steps = steps.max(1);
    let coord = |i: u32| f64::from(i) / f64::from(steps);
    let mut best = (f64::NEG_INFINITY, [0.0; 3]);
    let mut checked = 0u64;
    for i in 0..=steps {
        for j in 0..=steps {
            for k in 0..=steps {
                let p = [coord(i), coord(j), coord(k)];
                if !is_violating(p) {
                    continue;
                }
                checked += 1;
                let v = appleby_prob_sum_two(p).expect("grid lies in [0,1]");
                if v > best.0 {
                    best = (v, p);
                }
            }
        }
    }
    ApplebyGridSup {
        steps,
        sup: best.0,
        argmax: best.1,
        points_checked: checked,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CouplingSample {
    pub probabilities: [f64; 3],
    pub violating: bool,
    pub prob_sum_two: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MeyerCoupling {
    pub rays: usize,
    pub cap_cos: f64,
    pub samples: Vec<CouplingSample>,
    /// Largest [`appleby_prob_sum_two`] among violating samples, if any.
    pub max_violating: Option<f64>,
}

/// Turn the Meyer colouring into imprecise measurements: for each direction of
/// a random orthonormal triad, `p_i` is the fraction of rational rays (with
/// `n ≤ max_n`) inside the cap `|cos| ≥ cap_cos` around it that are coloured 1.
pub fn meyer_coupling(samples: usize, max_n: u32, cap_cos: f64, seed: u64) -> MeyerCoupling {
    let rays: Vec<([f64; 3], u8)> = enumerate_pyth_points(max_n)
        .iter()
        .map(|p| (p.to_f64(), meyer_color(p)))
        .collect();
    let mut out = Vec::with_capacity(samples);
    for s in 0..samples {
        let mut r = rng::stream(seed, &[APPLEBY_STREAM, s as u64]);
        let triad = random_real_triad(&mut r);
        let probabilities = triad.map(|d| {
            let (mut hit, mut one) = (0u32, 0u32);
            for (x, c) in &rays {
                let dot = d[0] * x[0] + d[1] * x[1] + d[2] * x[2];
                if dot.abs() >= cap_cos {
                    hit += 1;
                    one += u32::from(*c);
                }
            }
            if hit == 0 {
                0.5
            } else {
                f64::from(one) / f64::from(hit)
            }
        });
        out.push(CouplingSample {
            probabilities,
            violating: is_violating(probabilities),
            prob_sum_two: appleby_prob_sum_two(probabilities).expect("fractions lie in [0,1]"),
        });
    }
    let max_violating = out
        .iter()
        .filter(|c| c.violating)
        .map(|c| c.prob_sum_two)
        .reduce(f64::max);
    MeyerCoupling {
        rays: rays.len(),
        cap_cos,
        samples: out,
        max_violating,
    }
}

/// A uniformly random orthonormal triad: Gram-Schmidt on two Gaussian
/// vectors, completed by their cross product.
fn random_real_triad<R: Rng + ?Sized>(r: &mut R) -> [[f64; 3]; 3] {
    let mut gaussian = || -> [f64; 3] { [0; 3].map(|_| r.sample(StandardNormal)) };
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let unit = |a: [f64; 3]| {
        let n = dot(&a, &a).sqrt();
        a.map(|x| x / n)
    };
    let a = unit(gaussian());
    let b0 = gaussian();
    let d = dot(&a, &b0);
    let b = unit([b0[0] - d * a[0], b0[1] - d * a[1], b0[2] - d * a[2]]);
    let c = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    [a, b, c]
}
