//! Exact arithmetic in the cyclotomic field `Q(θ)`, `θ` a primitive d-th root of unity.
//!
//! Elements are stored in the power basis `1, θ, …, θ^{φ(d)-1}` and reduced
//! modulo the cyclotomic polynomial `Φ_d` after every operation, so that
//! every nonzero element is invertible.
//!
//! A value whose only nonzero coordinate is the constant one is a rational and
//! mixes freely with values of any modulus; this lets algebra coefficients stay
//! in `Q` until trace parameters are substituted.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

// Dense polynomials over Q, lowest degree first, no trailing zeros.

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// The d-th cyclotomic polynomial, lowest degree first.
///
/// Obtained by exact division of `x^d - 1` by `Φ_e` for every proper divisor `e`.
pub fn cyclo_poly(d: u32) -> Vec<Rational> {
    assert!(d >= 1, "cyclotomic modulus must be positive");
    let mut num = vec![Rational::zero(); d as usize + 1];
    num[0] = rat_int(-1);
    num[d as usize] = Rational::one();
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        let (q, r) = poly_divrem(&num, &cyclo_poly_cached(e));
        debug_assert!(r.is_empty());
        num = q;
    }
    num
}

fn cyclo_poly_cached(d: u32) -> Arc<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    let p = Arc::new(cyclo_poly(d));
    cache.lock().unwrap().insert(d, p.clone());
    p
}

/// Euler's totient, i.e. the degree of `Φ_d`.
pub fn totient(d: u32) -> usize {
    (1..=d).filter(|k| num_integer::gcd(*k, d) == 1).count()
}

#[derive(Clone, Debug)]
pub struct CycloNum {
    d: u32,
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn from_rational(q: Rational) -> Self {
        CycloNum { d: 1, coeffs: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// Builds `Σ c_k θ^k` and reduces it modulo `Φ_d`; `coeffs` may be of any length.
    pub fn from_coeffs(d: u32, coeffs: Vec<Rational>) -> Self {
        assert!(d >= 1, "cyclotomic modulus must be positive");
        let phi = cyclo_poly_cached(d);
        let mut c = coeffs;
        trim(&mut c);
        let (_, mut r) = poly_divrem(&c, &phi);
        r.resize(phi.len() - 1, Rational::zero());
        CycloNum { d, coeffs: r }
    }

    /// `θ^k` for a primitive d-th root of unity `θ`; `k` is taken mod d.
    pub fn theta_pow(d: u32, k: i64) -> Self {
        let k = k.rem_euclid(d as i64) as usize;
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        Self::from_coeffs(d, c)
    }

    pub fn theta(d: u32) -> Self {
        Self::theta_pow(d, 1)
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    /// Power-basis coordinates, length `φ(d)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.coeffs[0]
    }

    fn lift_to(&self, d: u32) -> CycloNum {
        debug_assert!(self.is_rational());
        let mut coeffs = vec![Rational::zero(); totient(d)];
        coeffs[0] = self.coeffs[0].clone();
        CycloNum { d, coeffs }
    }

    /// Brings two operands to a common modulus.
    fn align<'a>(
        a: &'a CycloNum,
        b: &'a CycloNum,
    ) -> (std::borrow::Cow<'a, CycloNum>, std::borrow::Cow<'a, CycloNum>) {
        use std::borrow::Cow;
        if a.d == b.d {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        if a.is_rational() {
            return (Cow::Owned(a.lift_to(b.d)), Cow::Borrowed(b));
        }
        if b.is_rational() {
            return (Cow::Borrowed(a), Cow::Owned(b.lift_to(a.d)));
        }
        panic!("cyclotomic modulus mismatch: {} vs {}", a.d, b.d);
    }

    pub fn inverse(&self) -> Option<CycloNum> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            let mut coeffs = vec![Rational::zero(); self.coeffs.len()];
            coeffs[0] = self.coeffs[0].recip();
            return Some(CycloNum { d: self.d, coeffs });
        }
        // Extended Euclid in Q[x]: track s with s·a ≡ r (mod Φ_d).
        let phi = cyclo_poly_cached(self.d);
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let (mut r0, mut r1) = (phi.to_vec(), a);
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant since Φ_d is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let s: Vec<Rational> = s0.into_iter().map(|x| x * &c).collect();
        Some(Self::from_coeffs(self.d, s))
    }

    pub fn checked_div(&self, rhs: &CycloNum) -> Option<CycloNum> {
        rhs.inverse().map(|inv| self * &inv)
    }

    pub fn pow(&self, mut e: u32) -> CycloNum {
        let mut base = self.clone();
        let mut acc = CycloNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex value with `θ = exp(2πi/d)`.
    pub fn to_complex(&self) -> Complex64 {
        let theta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.d as f64);
        let mut acc = Complex64::zero();
        let mut p = Complex64::one();
        for c in &self.coeffs {
            acc += p * c.to_f64().unwrap_or(f64::NAN);
            p *= theta;
        }
        acc
    }

    pub(crate) fn is_one_value(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_one()
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.d == other.d {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() && other.is_rational() {
            return self.coeffs[0] == other.coeffs[0];
        }
        false
    }
}

impl Eq for CycloNum {}

impl Zero for CycloNum {
    fn zero() -> Self {
        CycloNum::from_int(0)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CycloNum {
    fn one() -> Self {
        CycloNum::from_int(1)
    }
}

impl From<Rational> for CycloNum {
    fn from(q: Rational) -> Self {
        CycloNum::from_rational(q)
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        CycloNum::from_int(n)
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'a CycloNum) -> CycloNum {
        let (a, b) = CycloNum::align(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycloNum { d: a.d, coeffs }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'a CycloNum) -> CycloNum {
        let (a, b) = CycloNum::align(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CycloNum { d: a.d, coeffs }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        if self.is_rational() || rhs.is_rational() {
            let (q, other) = if self.is_rational() { (self, rhs) } else { (rhs, self) };
            let q = &q.coeffs[0];
            let coeffs = other.coeffs.iter().map(|c| c * q).collect();
            return CycloNum { d: other.d, coeffs };
        }
        let (a, b) = CycloNum::align(self, rhs);
        CycloNum::from_coeffs(a.d, poly_mul(&a.coeffs, &b.coeffs))
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { d: self.d, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
        impl $tra<&CycloNum> for CycloNum {
            fn $ma(&mut self, rhs: &CycloNum) {
                *self = (&*self).$m(rhs);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "(")?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
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
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "θ")?;
                    } else {
                        write!(f, "θ^{k}")?;
                    }
                }
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclo_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclo_poly(2), ints(&[1, 1]));
        assert_eq!(cyclo_poly(4), ints(&[1, 0, 1]));
        assert_eq!(cyclo_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclo_poly(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclo_poly(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        for d in 1..=12 {
            assert_eq!(cyclo_poly(d).len() - 1, totient(d), "d={d}");
        }
    }

    #[test]
    fn theta_has_order_d() {
        for d in 1..=10u32 {
            let t = CycloNum::theta(d);
            assert!(t.pow(d).is_one_value(), "θ^d != 1 for d={d}");
            for k in 1..d {
                assert!(!t.pow(k).is_one_value(), "θ^{k} == 1 for d={d}");
            }
        }
    }

    #[test]
    fn character_sums_vanish() {
        for d in 1..=10u32 {
            for m in 0..d as i64 {
                let tm = CycloNum::theta_pow(d, m);
                let sum = (0..d as i64)
                    .map(|k| CycloNum::theta_pow(d, k * m))
                    .fold(CycloNum::zero(), |acc, x| acc + x);
                if tm.is_one_value() {
                    assert_eq!(sum, CycloNum::from_int(d as i64));
                } else {
                    assert!(sum.is_zero(), "d={d} m={m}");
                }
            }
        }
    }

    #[test]
    fn inverse_of_non_rational() {
        for d in [3u32, 4, 5, 6, 7, 8] {
            let a = CycloNum::from_int(2) + CycloNum::theta(d) - CycloNum::theta_pow(d, 2) * CycloNum::from_ratio(1, 3);
            let inv = a.inverse().unwrap();
            assert!((&a * &inv).is_one_value(), "d={d}");
        }
        assert!(CycloNum::zero().inverse().is_none());
    }

    #[test]
    fn rationals_mix_with_any_modulus() {
        let half = CycloNum::from_ratio(1, 2);
        let t = CycloNum::theta(3);
        let s = &half + &t;
        assert_eq!(s.modulus(), 3);
        assert_eq!(&s - &t, half);
        assert_eq!(CycloNum::from_coeffs(5, vec![rat(1, 2)]), half);
    }

    #[test]
    fn numeric_theta() {
        let i = CycloNum::theta(4).to_complex();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let w = CycloNum::theta(3).to_complex();
        assert!((w - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-12);
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycloNum::from_ratio(-1, 2).to_string(), "-1/2");
        let x = CycloNum::from_ratio(1, 2) - CycloNum::theta(3) * CycloNum::from_int(3);
        assert_eq!(x.to_string(), "(1/2 - 3*θ)");
    }
}
