use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{GeometryError, QuadScalar};

/// An unnormalized direction vector with entries in Q(√2, √3).
#[derive(Clone)]
pub struct ExactVector {
    label: String,
    entries: Vec<QuadScalar>,
}

impl ExactVector {
    pub fn new(label: impl Into<String>, entries: Vec<QuadScalar>) -> Result<Self, GeometryError> {
        let label = label.into();
        if entries.is_empty() {
            return Err(GeometryError::EmptyVector(label));
        }
        if entries.iter().all(QuadScalar::is_zero) {
            return Err(GeometryError::ZeroVector(label));
        }
        Ok(Self { label, entries })
    }

    /// Integer-entry convenience constructor.
    pub fn from_ints(label: impl Into<String>, entries: &[i64]) -> Result<Self, GeometryError> {
        Self::new(label, entries.iter().map(|&x| QuadScalar::integer(x)).collect())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn entries(&self) -> &[QuadScalar] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Multiply by a nonzero field element.
    pub fn scaled(&self, s: &QuadScalar) -> Result<Self, GeometryError> {
        Self::new(self.label.clone(), self.entries.iter().map(|e| e * s).collect())
    }

    pub fn negated(&self) -> Self {
        Self {
            label: self.label.clone(),
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// Canonical representative of the ray through this vector.
    ///
    /// The vector is divided by its first nonzero entry, then rescaled by a
    /// positive rational so that all coefficients are coprime integers.
    /// Two vectors span the same ray iff their canonical forms are equal.
    pub fn canonical_ray(&self) -> Vec<QuadScalar> {
        let lead = self
            .entries
            .iter()
            .find(|e| !e.is_zero())
            .expect("nonzero by construction");
        let inv = lead.inverse().expect("nonzero");
        let normalized: Vec<QuadScalar> = self.entries.iter().map(|e| e * &inv).collect();
        primitive_form(&normalized)
    }

    pub fn same_ray(&self, other: &ExactVector) -> bool {
        self.dim() == other.dim() && self.canonical_ray() == other.canonical_ray()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(QuadScalar::to_f64).collect()
    }

    /// Squared Euclidean norm.
    pub fn norm_sq(&self) -> QuadScalar {
        inner_product(self, self).expect("same dimension")
    }
}

/// Scale by a positive rational so every coefficient is an integer and their
/// gcd is one.
fn primitive_form(v: &[QuadScalar]) -> Vec<QuadScalar> {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for c in v.iter().flat_map(|s| s.coeffs().iter()) {
        lcm = lcm.lcm(c.denom());
    }
    for c in v.iter().flat_map(|s| s.coeffs().iter()) {
        let n = c.numer() * (&lcm / c.denom());
        gcd = gcd.gcd(&n);
    }
    let factor = BigRational::new(lcm, gcd.abs());
    let mut out: Vec<QuadScalar> = v.iter().map(|s| s.scale(&factor)).collect();
    if let Some(lead) = out.iter().find(|s| !s.is_zero()) {
        if !lead.leading_sign_positive() {
            out = out.iter().map(|s| -s).collect();
        }
    }
    out
}

impl PartialEq for ExactVector {
    /// Equality as directions; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.same_ray(other)
    }
}

impl Eq for ExactVector {}

impl fmt::Debug for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=(", self.label)?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Real bilinear inner product of two vectors of equal length.
pub fn inner_product(u: &ExactVector, v: &ExactVector) -> Result<QuadScalar, GeometryError> {
    if u.dim() != v.dim() {
        return Err(GeometryError::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    Ok(u.entries
        .iter()
        .zip(&v.entries)
        .fold(QuadScalar::zero(), |acc, (a, b)| acc + a * b))
}

pub fn is_orthogonal(u: &ExactVector, v: &ExactVector) -> Result<bool, GeometryError> {
    inner_product(u, v).map(|s| s.is_zero())
}

/// Cross product in dimension 3. The label of the result joins the input labels.
pub fn cross_product(u: &ExactVector, v: &ExactVector) -> Result<ExactVector, GeometryError> {
    for w in [u, v] {
        if w.dim() != 3 {
            return Err(GeometryError::NotThreeDimensional(w.dim()));
        }
    }
    let a = u.entries();
    let b = v.entries();
    let entries = vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ];
    if entries.iter().all(QuadScalar::is_zero) {
        return Err(GeometryError::ParallelInputs {
            left: u.label.clone(),
            right: v.label.clone(),
        });
    }
    Ok(ExactVector {
        label: format!("{}x{}", u.label, v.label),
        entries,
    })
}

/// A point of S² with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    x: BigRational,
    y: BigRational,
    z: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Result<Self, GeometryError> {
        if (&x * &x + &y * &y + &z * &z) != BigRational::one() {
            return Err(GeometryError::NotOnSphere);
        }
        Ok(Self { x, y, z })
    }

    /// Point `(x, y, z) / n` from integers.
    pub fn from_scaled_ints(x: i64, y: i64, z: i64, n: i64) -> Result<Self, GeometryError> {
        if n == 0 {
            return Err(GeometryError::NotOnSphere);
        }
        let r = |a: i64| BigRational::new(BigInt::from(a), BigInt::from(n));
        Self::new(r(x), r(y), r(z))
    }

    pub fn coords(&self) -> [&BigRational; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn antipode(&self) -> Self {
        Self {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        let f = |q: &BigRational| QuadScalar::from_rational(q.clone()).to_f64();
        [f(&self.x), f(&self.y), f(&self.z)]
    }

    pub fn is_positive_leading(&self) -> bool {
        self.coords()
            .into_iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadScalar {
        QuadScalar::from_ints(a, b, c, d)
    }

    #[test]
    fn table_pair_is_orthogonal() {
        // (1, √2, 0) and (√2, −1, 1)
        let g = ExactVector::new("g", vec![q(1, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 0, 0)]).unwrap();
        let h = ExactVector::new("h", vec![q(0, 1, 0, 0), q(-1, 0, 0, 0), q(1, 0, 0, 0)]).unwrap();
        assert!(inner_product(&g, &h).unwrap().is_zero());
    }

    #[test]
    fn four_dim_pair_is_orthogonal() {
        let u = ExactVector::from_ints("u", &[1, 1, 0, 0]).unwrap();
        let v = ExactVector::from_ints("v", &[1, -1, 0, 0]).unwrap();
        assert!(inner_product(&u, &v).unwrap().is_zero());
    }

    #[test]
    fn cross_product_examples() {
        let e1 = ExactVector::from_ints("e1", &[1, 0, 0]).unwrap();
        let e2 = ExactVector::from_ints("e2", &[0, 1, 0]).unwrap();
        let e3 = ExactVector::from_ints("e3", &[0, 0, 1]).unwrap();
        assert_eq!(cross_product(&e1, &e2).unwrap().entries(), e3.entries());

        let g = ExactVector::new("g", vec![q(1, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 0, 0)]).unwrap();
        let h = ExactVector::new("h", vec![q(0, 1, 0, 0), q(-1, 0, 0, 0), q(1, 0, 0, 0)]).unwrap();
        let gh = cross_product(&g, &h).unwrap();
        assert_eq!(gh.entries(), &[q(0, 1, 0, 0), q(-1, 0, 0, 0), q(-3, 0, 0, 0)]);

        let f11 = ExactVector::from_ints("f", &[0, 1, 1]).unwrap();
        let f12 = ExactVector::from_ints("f'", &[0, -1, 1]).unwrap();
        let c = cross_product(&f11, &f12).unwrap();
        assert_eq!(c.entries(), &[q(2, 0, 0, 0), q(0, 0, 0, 0), q(0, 0, 0, 0)]);
        assert!(c.same_ray(&e1));
    }

    #[test]
    fn parallel_cross_product_is_rejected() {
        let u = ExactVector::from_ints("u", &[1, 2, 3]).unwrap();
        let v = ExactVector::from_ints("v", &[-2, -4, -6]).unwrap();
        assert!(matches!(cross_product(&u, &v), Err(GeometryError::ParallelInputs { .. })));
    }

    #[test]
    fn irrational_multiples_share_a_ray() {
        let u = ExactVector::new("u", vec![q(1, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 0, 0)]).unwrap();
        let v = u.scaled(&q(0, 1, 0, 0)).unwrap();
        let w = u.scaled(&q(-3, 2, 0, 7)).unwrap();
        assert!(u.same_ray(&v));
        assert!(u.same_ray(&w));
        assert!(!u.same_ray(&ExactVector::from_ints("x", &[1, 1, 0]).unwrap()));
    }

    #[test]
    fn zero_vector_rejected() {
        assert!(matches!(
            ExactVector::from_ints("z", &[0, 0, 0]),
            Err(GeometryError::ZeroVector(_))
        ));
    }

    #[test]
    fn sphere_membership_is_exact() {
        assert!(RationalPoint::from_scaled_ints(2, 2, 1, 3).is_ok());
        assert!(RationalPoint::from_scaled_ints(1, 1, 1, 2).is_err());
    }
}
