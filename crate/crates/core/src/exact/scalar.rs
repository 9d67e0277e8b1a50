use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element `a + b√2 + c√3 + d√6` of the field Q(√2, √3).
///
/// Coefficients are arbitrary-precision rationals, always kept reduced
/// with a positive denominator (guaranteed by `BigRational`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    coeffs: [BigRational; 4],
}

impl QuadScalar {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self { coeffs: [a, b, c, d] }
    }

    pub fn from_coeffs(coeffs: [BigRational; 4]) -> Self {
        Self { coeffs }
    }

    /// Integer coefficients, convenient for literal tables.
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        Self::new(r(a), r(b), r(c), r(d))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::new(q, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn integer(n: i64) -> Self {
        Self::from_ints(n, 0, 0, 0)
    }

    pub fn sqrt2() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn sqrt3() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn sqrt6() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// Coefficients in the order (1, √2, √3, √6).
    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.coeffs
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when the value lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.clone().map(|c| c * q))
    }

    /// The automorphism √2 ↦ −√2 (so √6 ↦ −√6).
    fn conj_sqrt2(&self) -> Self {
        let [a, b, c, d] = self.coeffs.clone();
        Self::new(a, -b, c, -d)
    }

    /// The automorphism √3 ↦ −√3 (so √6 ↦ −√6).
    fn conj_sqrt3(&self) -> Self {
        let [a, b, c, d] = self.coeffs.clone();
        Self::new(a, b, -c, -d)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // s·σ₂(s) lies in Q(√3); multiplying by its √3-conjugate lands in Q.
        let s2 = self.conj_sqrt2();
        let in_q3 = self * &s2;
        let in_q3_conj = in_q3.conj_sqrt3();
        let norm = (&in_q3 * &in_q3_conj).coeffs[0].clone();
        debug_assert!((&in_q3 * &in_q3_conj).is_rational());
        let numer = &s2 * &in_q3_conj;
        Some(numer.scale(&norm.recip()))
    }

    /// Approximate real value.
    pub fn to_f64(&self) -> f64 {
        let f = |q: &BigRational| {
            let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        let [a, b, c, d] = &self.coeffs;
        f(a) + f(b) * 2f64.sqrt() + f(c) * 3f64.sqrt() + f(d) * 6f64.sqrt()
    }

    /// Sign of the first nonzero coefficient, used for canonical scaling.
    pub(crate) fn leading_sign_positive(&self) -> bool {
        self.coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .unwrap_or(true)
    }
}

impl Add<&QuadScalar> for &QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: &QuadScalar) -> QuadScalar {
        let mut out = self.coeffs.clone();
        for (o, r) in out.iter_mut().zip(rhs.coeffs.iter()) {
            *o += r;
        }
        QuadScalar::from_coeffs(out)
    }
}

impl Sub<&QuadScalar> for &QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: &QuadScalar) -> QuadScalar {
        let mut out = self.coeffs.clone();
        for (o, r) in out.iter_mut().zip(rhs.coeffs.iter()) {
            *o -= r;
        }
        QuadScalar::from_coeffs(out)
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar::from_coeffs(self.coeffs.clone().map(|c| -c))
    }
}

impl Mul<&QuadScalar> for &QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: &QuadScalar) -> QuadScalar {
        let [a1, b1, c1, d1] = &self.coeffs;
        let [a2, b2, c2, d2] = &rhs.coeffs;
        let two = BigRational::from_integer(BigInt::from(2));
        let three = BigRational::from_integer(BigInt::from(3));
        let six = BigRational::from_integer(BigInt::from(6));
        // √2√2=2, √3√3=3, √6√6=6, √2√3=√6, √2√6=2√3, √3√6=3√2
        let a = a1 * a2 + &two * (b1 * b2) + &three * (c1 * c2) + &six * (d1 * d2);
        let b = a1 * b2 + b1 * a2 + &three * (c1 * d2 + d1 * c2);
        let c = a1 * c2 + c1 * a2 + &two * (b1 * d2 + d1 * b2);
        let d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2;
        QuadScalar::new(a, b, c, d)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, rhs: &QuadScalar) -> QuadScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

/// Exact product in Q(√2, √3).
pub fn scalar_mul(s: &QuadScalar, t: &QuadScalar) -> QuadScalar {
    s * t
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "√2", "√3", "√6"];
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if name.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{name}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_products() {
        assert_eq!(QuadScalar::sqrt2() * QuadScalar::sqrt3(), QuadScalar::sqrt6());
        assert_eq!(QuadScalar::sqrt2() * QuadScalar::sqrt2(), QuadScalar::integer(2));
        assert_eq!(QuadScalar::sqrt2() * QuadScalar::sqrt6(), QuadScalar::from_ints(0, 0, 2, 0));
        assert_eq!(QuadScalar::sqrt3() * QuadScalar::sqrt6(), QuadScalar::from_ints(0, 3, 0, 0));
    }

    #[test]
    fn conjugate_product() {
        let p = QuadScalar::from_ints(1, 1, 0, 0);
        let q = QuadScalar::from_ints(1, -1, 0, 0);
        assert_eq!(scalar_mul(&p, &q), QuadScalar::integer(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let s = QuadScalar::from_ints(3, -1, 2, 5);
        let inv = s.inverse().unwrap();
        assert_eq!(&s * &inv, QuadScalar::one());
        assert!(QuadScalar::zero().inverse().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(QuadScalar::from_ints(1, -2, 0, 1).to_string(), "1 - 2√2 + √6");
        assert_eq!(QuadScalar::from_ints(0, 0, -1, 0).to_string(), "-√3");
    }
}
