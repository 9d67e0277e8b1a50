use proptest::prelude::*;

use qfoundry_core::exact::{cross_product, inner_product, is_orthogonal, ExactVector, QuadScalar};

fn scalar() -> impl Strategy<Value = QuadScalar> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6).prop_map(|(a, b, c, d)| QuadScalar::from_ints(a, b, c, d))
}

fn float(a: i64, b: i64, c: i64, d: i64) -> f64 {
    a as f64 + b as f64 * 2f64.sqrt() + c as f64 * 3f64.sqrt() + d as f64 * 6f64.sqrt()
}

fn vector(dim: usize) -> impl Strategy<Value = ExactVector> {
    proptest::collection::vec(-5i64..=5, dim)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| ExactVector::from_ints("v", &v).unwrap())
}

#[test]
fn basis_products() {
    let s2 = QuadScalar::sqrt2();
    let s3 = QuadScalar::sqrt3();
    assert_eq!(&s2 * &s2, QuadScalar::integer(2));
    assert_eq!(&s2 * &s3, QuadScalar::sqrt6());
    assert_eq!(&QuadScalar::sqrt6() * &QuadScalar::sqrt6(), QuadScalar::integer(6));
    assert!(QuadScalar::zero().inverse().is_none());
}

#[test]
fn same_ray_up_to_scaling() {
    let u = ExactVector::from_ints("u", &[1, -1, 2]).unwrap();
    let v = u.scaled(&QuadScalar::from_ints(0, 3, 0, 0)).unwrap();
    assert!(u.same_ray(&v));
    assert!(u.same_ray(&u.negated()));
    assert!(!u.same_ray(&ExactVector::from_ints("w", &[1, 1, 2]).unwrap()));
}

proptest! {
    #[test]
    fn ring_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
    }

    #[test]
    fn inverse_is_exact(x in scalar()) {
        match x.inverse() {
            Some(inv) => prop_assert_eq!(&x * &inv, QuadScalar::one()),
            None => prop_assert!(x.is_zero()),
        }
    }

    #[test]
    fn float_image_is_a_homomorphism(a in -6i64..=6, b in -6i64..=6, c in -6i64..=6, d in -6i64..=6, y in scalar()) {
        let x = QuadScalar::from_ints(a, b, c, d);
        prop_assert!((x.to_f64() - float(a, b, c, d)).abs() < 1e-12);
        let prod = (&x * &y).to_f64();
        prop_assert!((prod - x.to_f64() * y.to_f64()).abs() < 1e-9 * (1.0 + prod.abs()));
    }

    #[test]
    fn cross_product_is_orthogonal(u in vector(3), v in vector(3)) {
        let w = cross_product(&u, &v);
        if let Ok(w) = w {
            prop_assert!(is_orthogonal(&u, &w).unwrap());
            prop_assert!(is_orthogonal(&v, &w).unwrap());
        } else {
            prop_assert!(u.same_ray(&v));
        }
    }

    #[test]
    fn inner_product_matches_floats(u in vector(4), v in vector(4)) {
        let exact = inner_product(&u, &v).unwrap().to_f64();
        let f: f64 = u.to_f64().iter().zip(v.to_f64()).map(|(a, b)| a * b).sum();
        prop_assert!((exact - f).abs() < 1e-12);
    }
}
