//! Rational functions in `u, z` over `Q(θ)`.
//!
//! No polynomial gcd is taken. A fraction is kept canonical only up to
//! scaling: the denominator carries no monomial content, and either equals 1
//! or has leading coefficient 1. Equality is decided by cross-multiplication.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::cyclo::CycloNum;
use super::poly::PolyUZ;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Scalar {
    num: PolyUZ,
    den: PolyUZ,
}

const SINGULAR_EPS: f64 = 1e-12;

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: PolyUZ::zero(), den: PolyUZ::one() }
    }

    pub fn one() -> Self {
        Scalar::from_poly(PolyUZ::one())
    }

    pub fn from_poly(p: PolyUZ) -> Self {
        Scalar { num: p, den: PolyUZ::one() }
    }

    pub fn from_cyclo(c: CycloNum) -> Self {
        Scalar::from_poly(PolyUZ::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_cyclo(CycloNum::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_cyclo(CycloNum::from_ratio(n, d))
    }

    pub fn u() -> Self {
        Scalar::from_poly(PolyUZ::u())
    }

    pub fn z() -> Self {
        Scalar::from_poly(PolyUZ::z())
    }

    /// `u^k` for any integer `k`.
    pub fn u_pow(k: i32) -> Self {
        Scalar::from_poly(PolyUZ::monomial(CycloNum::one(), (k, 0)))
    }

    pub fn z_pow(k: i32) -> Self {
        Scalar::from_poly(PolyUZ::monomial(CycloNum::one(), (0, k)))
    }

    /// Builds `num/den` in canonical form.
    pub fn fraction(num: PolyUZ, den: PolyUZ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn numer(&self) -> &PolyUZ {
        &self.num
    }

    pub fn denom(&self) -> &PolyUZ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn canonical(num: PolyUZ, den: PolyUZ) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let m = den.min_exps().expect("nonzero denominator");
        let neg = (-m.0, -m.1);
        let (num, den) = (num.shift(neg), den.shift(neg));
        if let Some((_, c)) = den.single_term() {
            let inv = c.inverse().expect("nonzero coefficient");
            return Scalar { num: num.scale(&inv), den: PolyUZ::one() };
        }
        if num.len() == den.len() {
            let (ne, nc) = num.leading().unwrap();
            let (de, dc) = den.leading().unwrap();
            if ne == de {
                let ratio = nc.checked_div(dc).unwrap();
                if den.scale(&ratio) == num {
                    return Scalar::from_cyclo(ratio);
                }
            }
        }
        let (_, lc) = den.leading().unwrap();
        if lc.is_one_value() {
            return Scalar { num, den };
        }
        let inv = lc.inverse().unwrap();
        Scalar { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inverse()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, e: i32) -> Result<Scalar> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Scalar::canonical(base.num.pow(k), base.den.pow(k)))
    }

    pub fn scale(&self, c: &CycloNum) -> Scalar {
        Scalar::canonical(self.num.scale(c), self.den.clone())
    }

    /// Numeric value at `(u0, z0)` with `θ = exp(2πi/d)`.
    pub fn eval(&self, u0: Complex64, z0: Complex64, d: u32) -> Result<Complex64> {
        for found in self.num.moduli().chain(self.den.moduli()) {
            if found != d {
                return Err(Error::ModulusMismatch { expected: d, found });
            }
        }
        let (nu1, nz1) = self.num.has_negative_exps();
        let (nu2, nz2) = self.den.has_negative_exps();
        if ((nu1 || nu2) && u0.norm() <= SINGULAR_EPS) || ((nz1 || nz2) && z0.norm() <= SINGULAR_EPS) {
            return Err(Error::SingularPoint);
        }
        let den = self.den.eval(u0, z0);
        if den.norm() <= SINGULAR_EPS {
            return Err(Error::SingularPoint);
        }
        Ok(self.num.eval(u0, z0) / den)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den.is_one() && other.den.is_one() {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Scalar {}

impl From<CycloNum> for Scalar {
    fn from(c: CycloNum) -> Self {
        Scalar::from_cyclo(c)
    }
}

impl From<PolyUZ> for Scalar {
    fn from(p: PolyUZ) -> Self {
        Scalar::from_poly(p)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::canonical(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar::canonical(&self.num - &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        Scalar::canonical(num, &self.den * &rhs.den)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num * &rhs.num, den: PolyUZ::one() };
        }
        if self.num == rhs.den {
            return Scalar::canonical(rhs.num.clone(), self.den.clone());
        }
        if rhs.num == self.den {
            return Scalar::canonical(self.num.clone(), rhs.den.clone());
        }
        Scalar::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
