//! A non-contextual coloring of the rational points of the unit sphere.
//!
//! Every rational direction has a primitive integer representative
//! `(x, y, z)` with `x² + y² + z² = n²`; exactly one coordinate is odd.
//! The coloring sends a direction to 0 when that odd coordinate is `z`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::RationalPoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeyerError {
    #[error("the zero vector has no direction")]
    ZeroVector,
}

/// Primitive integer point on the sphere of radius `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PythTriple {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
    pub n: BigInt,
}

impl PythTriple {
    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn satisfies_identity(&self) -> bool {
        &self.x * &self.x + &self.y * &self.y + &self.z * &self.z == &self.n * &self.n
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).gcd(&self.z).is_one()
    }

    pub fn odd_count(&self) -> usize {
        self.coords().iter().filter(|c| c.is_odd()).count()
    }

    pub fn dot(&self, other: &PythTriple) -> BigInt {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    /// The same ray with the first nonzero coordinate positive.
    pub fn canonical_sign(&self) -> PythTriple {
        let lead = self.coords().into_iter().find(|c| !c.is_zero()).expect("nonzero");
        if lead.is_negative() {
            PythTriple {
                x: -&self.x,
                y: -&self.y,
                z: -&self.z,
                n: self.n.clone(),
            }
        } else {
            self.clone()
        }
    }

    pub fn to_point(&self) -> RationalPoint {
        let r = |c: &BigInt| BigRational::new(c.clone(), self.n.clone());
        RationalPoint::new(r(&self.x), r(&self.y), r(&self.z)).expect("Pythagorean identity")
    }

    pub fn label(&self) -> String {
        format!("({},{},{})/{}", self.x, self.y, self.z, self.n)
    }
}

/// Primitive triple on the ray of `p`: multiply by the lcm of the
/// denominators and divide by the gcd of the resulting numerators.
pub fn to_primitive_pyth(p: &RationalPoint) -> Result<PythTriple, MeyerError> {
    let coords = p.coords();
    if coords.iter().all(|c| c.is_zero()) {
        return Err(MeyerError::ZeroVector);
    }
    let lcm = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coords.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let [x, y, z]: [BigInt; 3] = ints.into_iter().map(|c| c / &g).collect::<Vec<_>>().try_into().expect("three");
    // a unit rational point scaled by lcm/g has integer norm lcm/g
    let n = (&x * &x + &y * &y + &z * &z).sqrt();
    Ok(PythTriple { x, y, z, n })
}

fn color_of_triple(t: &PythTriple) -> u8 {
    if t.z.is_odd() {
        0
    } else {
        1
    }
}

/// 0 when the primitive triple has odd third coordinate, 1 otherwise.
pub fn meyer_color(p: &RationalPoint) -> u8 {
    color_of_triple(&to_primitive_pyth(p).expect("points of the sphere are nonzero"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeyerViolation {
    Antipodal { point: String },
    Pair { first: String, second: String },
    Triad { first: String, second: String, third: String, sum: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub rays: usize,
    pub pairs: usize,
    pub triads: usize,
    pub violations: Vec<MeyerViolation>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check antipodal invariance, the pair rule `f(x) + f(y) ≥ 1` and the
/// triad rule `f(x) + f(y) + f(z) = 2` over all orthogonal relations among
/// `points`. Antipodal points count as one ray. Orthogonality is decided
/// by exact integer dot products.
pub fn verify_meyer_conditions(points: &[RationalPoint]) -> ConditionReport {
    let mut violations = Vec::new();
    let mut index: HashMap<PythTriple, usize> = HashMap::new();
    let mut rays: Vec<PythTriple> = Vec::new();
    for p in points {
        let t = to_primitive_pyth(p).expect("points of the sphere are nonzero");
        if meyer_color(p) != meyer_color(&p.antipode()) {
            violations.push(MeyerViolation::Antipodal { point: t.label() });
        }
        let key = t.canonical_sign();
        if !index.contains_key(&key) {
            index.insert(key.clone(), rays.len());
            rays.push(key);
        }
    }
    let colors: Vec<u8> = rays.iter().map(color_of_triple).collect();
    let small: Option<Vec<[i64; 3]>> = rays
        .iter()
        .map(|t| {
            let c = |v: &BigInt| i64::try_from(v).ok().filter(|x| x.abs() < (1 << 30));
            Some([c(&t.x)?, c(&t.y)?, c(&t.z)?])
        })
        .collect();
    let orthogonal = |i: usize, j: usize| match &small {
        Some(s) => s[i][0] * s[j][0] + s[i][1] * s[j][1] + s[i][2] * s[j][2] == 0,
        None => rays[i].dot(&rays[j]).is_zero(),
    };

    let mut pairs = 0;
    let mut triads = 0;
    for i in 0..rays.len() {
        for j in (i + 1)..rays.len() {
            if !orthogonal(i, j) {
                continue;
            }
            pairs += 1;
            if colors[i] + colors[j] < 1 {
                violations.push(MeyerViolation::Pair {
                    first: rays[i].label(),
                    second: rays[j].label(),
                });
            }
            let third = cross_primitive(&rays[i], &rays[j]);
            if let Some(&k) = index.get(&third) {
                if k > j {
                    triads += 1;
                    let sum = colors[i] + colors[j] + colors[k];
                    if sum != 2 {
                        violations.push(MeyerViolation::Triad {
                            first: rays[i].label(),
                            second: rays[j].label(),
                            third: rays[k].label(),
                            sum,
                        });
                    }
                }
            }
        }
    }
    ConditionReport {
        rays: rays.len(),
        pairs,
        triads,
        violations,
    }
}

/// Canonical primitive triple on the ray of `a × b`.
fn cross_primitive(a: &PythTriple, b: &PythTriple) -> PythTriple {
    let x = &a.y * &b.z - &a.z * &b.y;
    let y = &a.z * &b.x - &a.x * &b.z;
    let z = &a.x * &b.y - &a.y * &b.x;
    let g = x.gcd(&y).gcd(&z);
    let (x, y, z) = (x / &g, y / &g, z / &g);
    let n = (&x * &x + &y * &y + &z * &z).sqrt();
    PythTriple { x, y, z, n }.canonical_sign()
}

/// One point per ray for every primitive triple with `n ≤ max_n`, ordered by
/// `n` and then lexicographically; the representative has its first nonzero
/// coordinate positive.
pub fn enumerate_pyth_points(max_n: u32) -> Vec<RationalPoint> {
    enumerate_pyth_triples(max_n).iter().map(PythTriple::to_point).collect()
}

pub fn enumerate_pyth_triples(max_n: u32) -> Vec<PythTriple> {
    let mut out = Vec::new();
    for n in 1..=i64::from(max_n) {
        let nn = n * n;
        let mut shell = Vec::new();
        for x in 0..=n {
            for y in -n..=n {
                let rest = nn - x * x - y * y;
                if rest < 0 {
                    continue;
                }
                let z = rest.sqrt();
                if z * z != rest {
                    continue;
                }
                for z in if z == 0 { vec![0] } else { vec![z, -z] } {
                    let lead_positive = x > 0 || (x == 0 && (y > 0 || (y == 0 && z > 0)));
                    if lead_positive && x.gcd(&y).gcd(&z) == 1 {
                        shell.push([x, y, z]);
                    }
                }
            }
        }
        shell.sort();
        out.extend(shell.into_iter().map(|[x, y, z]| PythTriple {
            x: x.into(),
            y: y.into(),
            z: z.into(),
            n: n.into(),
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64, z: i64, n: i64) -> RationalPoint {
        RationalPoint::from_scaled_ints(x, y, z, n).unwrap()
    }

    fn triple(x: i64, y: i64, z: i64, n: i64) -> PythTriple {
        PythTriple { x: x.into(), y: y.into(), z: z.into(), n: n.into() }
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(to_primitive_pyth(&pt(0, 0, 1, 1)).unwrap(), triple(0, 0, 1, 1));
        assert_eq!(to_primitive_pyth(&pt(2, 2, 1, 3)).unwrap(), triple(2, 2, 1, 3));
        assert_eq!(to_primitive_pyth(&pt(3, -4, 0, 5)).unwrap(), triple(3, -4, 0, 5));
        // mixed denominators: (1/3, 2/3, 2/3) written with denominators 3, 3, 3
        assert_eq!(to_primitive_pyth(&pt(6, 12, 12, 18)).unwrap(), triple(1, 2, 2, 3));
    }

    #[test]
    fn color_examples() {
        assert_eq!(meyer_color(&pt(0, 0, 1, 1)), 0);
        assert_eq!(meyer_color(&pt(1, 0, 0, 1)), 1);
        assert_eq!(meyer_color(&pt(2, 2, 1, 3)), 0);
        let triad = [pt(1, 0, 0, 1), pt(0, 1, 0, 1), pt(0, 0, 1, 1)];
        assert_eq!(triad.iter().map(meyer_color).collect::<Vec<_>>(), vec![1, 1, 0]);
        let triad = [pt(2, 2, 1, 3), pt(2, -1, -2, 3), pt(1, -2, 2, 3)];
        assert_eq!(triad.iter().map(meyer_color).collect::<Vec<_>>(), vec![0, 1, 1]);
        assert_eq!(meyer_color(&pt(0, 0, 1, 1)) + meyer_color(&pt(1, 0, 0, 1)), 1);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_pyth_points(1).len(), 3);
        let three = enumerate_pyth_triples(3);
        assert!(three.contains(&triple(2, 2, 1, 3)));
        assert!(three.contains(&triple(1, -2, 2, 3)));
        assert!(!three.contains(&triple(-2, 2, 1, 3)));
    }

    #[test]
    fn standard_basis_counts() {
        let basis = [pt(1, 0, 0, 1), pt(0, 1, 0, 1), pt(0, 0, 1, 1)];
        let r = verify_meyer_conditions(&basis);
        assert_eq!((r.rays, r.pairs, r.triads), (3, 3, 1));
        assert!(r.passed());
    }
}
