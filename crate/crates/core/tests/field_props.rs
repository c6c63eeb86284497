//! Algebraic laws of the scalar tower and evaluation as a ring homomorphism.

use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

use singknot::field::{rat, CycloNum, PolyUZ, Scalar};

const MODULI: [u32; 5] = [1, 3, 4, 5, 6];

fn cyclo(d: u32) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec((-6i64..=6, 1i64..=4), d as usize).prop_map(move |v| {
        CycloNum::from_coeffs(d, v.into_iter().map(|(n, q)| rat(n, q)).collect())
    })
}

fn poly(d: u32) -> impl Strategy<Value = PolyUZ> {
    prop::collection::vec((cyclo(d), -2i32..=2, -2i32..=2), 0..4).prop_map(|terms| {
        terms.into_iter().fold(PolyUZ::zero(), |acc, (c, a, b)| &acc + &PolyUZ::monomial(c, (a, b)))
    })
}

fn scalar(d: u32) -> impl Strategy<Value = Scalar> {
    (poly(d), poly(d)).prop_map(|(n, m)| {
        let den = &m + &PolyUZ::monomial(CycloNum::from_int(3), (1, 0));
        Scalar::fraction(n, den).unwrap_or_else(|_| Scalar::one())
    })
}

fn modulus_and<T: std::fmt::Debug, S: Strategy<Value = T>>(f: impl Fn(u32) -> S + Clone + 'static) -> impl Strategy<Value = (u32, T, T, T)> {
    prop::sample::select(MODULI.to_vec()).prop_flat_map(move |d| (Just(d), f(d), f(d), f(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms((_d, a, b, c) in modulus_and(cyclo)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, CycloNum::zero());
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, CycloNum::one());
        }
    }

    #[test]
    fn cyclotomic_values_match_complex((d, a, b, _c) in modulus_and(cyclo)) {
        let _ = d;
        let lhs = (&a * &b).to_complex();
        let rhs = a.to_complex() * b.to_complex();
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn scalar_field_axioms((_d, a, b, c) in modulus_and(scalar)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism((d, a, b, _c) in modulus_and(scalar), ur in 0.3f64..2.0, ui in -1.0f64..1.0, zr in 0.3f64..2.0, zi in -1.0f64..1.0) {
        let (u0, z0) = (Complex64::new(ur, ui), Complex64::new(zr, zi));
        let (Ok(ea), Ok(eb)) = (a.eval(u0, z0, d), b.eval(u0, z0, d)) else { return Ok(()) };
        if let Ok(sum) = (&a + &b).eval(u0, z0, d) {
            prop_assert!((sum - (ea + eb)).norm() <= 1e-7 * (1.0 + sum.norm()));
        }
        if let Ok(prod) = (&a * &b).eval(u0, z0, d) {
            prop_assert!((prod - ea * eb).norm() <= 1e-7 * (1.0 + prod.norm()));
        }
    }
}

#[test]
fn evaluation_rejects_poles() {
    let s = Scalar::z_pow(-1);
    assert!(s.eval(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 1).is_err());
    let t = Scalar::fraction(PolyUZ::one(), &PolyUZ::u() - &PolyUZ::one()).unwrap();
    assert!(t.eval(Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), 1).is_err());
    let theta = Scalar::from_cyclo(CycloNum::theta(3));
    assert!(theta.eval(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), 4).is_err());
}
