//! Sparse polynomials in `u` and `z` with cyclotomic coefficients.
//!
//! Exponents are signed, so monomial denominators such as `u^{-1}` live in the
//! numerator and never force a genuine fraction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::cyclo::CycloNum;

/// Exponent pair `(u, z)`; the map order is u-major, then z.
pub type Exps = (i32, i32);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyUZ {
    terms: BTreeMap<Exps, CycloNum>,
}

impl PolyUZ {
    pub fn zero() -> Self {
        PolyUZ { terms: BTreeMap::new() }
    }

    pub fn constant(c: CycloNum) -> Self {
        Self::monomial(c, (0, 0))
    }

    pub fn one() -> Self {
        Self::constant(CycloNum::one())
    }

    pub fn monomial(c: CycloNum, e: Exps) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        PolyUZ { terms }
    }

    pub fn u() -> Self {
        Self::monomial(CycloNum::one(), (1, 0))
    }

    pub fn z() -> Self {
        Self::monomial(CycloNum::one(), (0, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&(0, 0)).is_some_and(CycloNum::is_one_value)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &CycloNum)> {
        self.terms.iter()
    }

    /// Leading term in the u-major lexicographic order.
    pub fn leading(&self) -> Option<(&Exps, &CycloNum)> {
        self.terms.iter().next_back()
    }

    pub fn single_term(&self) -> Option<(&Exps, &CycloNum)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Smallest u- and z-exponents occurring (componentwise).
    pub fn min_exps(&self) -> Option<Exps> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(a, b), &(x, y)| (a.min(x), b.min(y))))
    }

    pub fn shift(&self, by: Exps) -> PolyUZ {
        if by == (0, 0) {
            return self.clone();
        }
        PolyUZ {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + by.0, b + by.1), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycloNum) -> PolyUZ {
        if c.is_zero() {
            return PolyUZ::zero();
        }
        if c.is_one_value() {
            return self.clone();
        }
        PolyUZ { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    fn add_term(&mut self, e: Exps, c: CycloNum) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &PolyUZ) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, rhs: &PolyUZ) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }

    pub fn pow(&self, mut e: u32) -> PolyUZ {
        let mut base = self.clone();
        let mut acc = PolyUZ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numeric value at `(u0, z0)`; cyclotomic coefficients use `θ = exp(2πi/d)`.
    pub fn eval(&self, u0: Complex64, z0: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c.to_complex() * u0.powi(a) * z0.powi(b))
            .sum()
    }

    /// True if some term has a negative exponent in `u` (resp. `z`).
    pub fn has_negative_exps(&self) -> (bool, bool) {
        self.terms
            .keys()
            .fold((false, false), |(nu, nz), &(a, b)| (nu || a < 0, nz || b < 0))
    }

    pub fn moduli(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.values().filter(|c| !c.is_rational()).map(CycloNum::modulus)
    }
}

impl<'a> Add<&'a PolyUZ> for &'a PolyUZ {
    type Output = PolyUZ;
    fn add(self, rhs: &'a PolyUZ) -> PolyUZ {
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        big.add_assign_ref(small);
        big
    }
}

impl<'a> Sub<&'a PolyUZ> for &'a PolyUZ {
    type Output = PolyUZ;
    fn sub(self, rhs: &'a PolyUZ) -> PolyUZ {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl<'a> Mul<&'a PolyUZ> for &'a PolyUZ {
    type Output = PolyUZ;
    fn mul(self, rhs: &'a PolyUZ) -> PolyUZ {
        if let Some((e, c)) = rhs.single_term() {
            let mut p = self.scale(c);
            p = p.shift(*e);
            return p;
        }
        if let Some((e, c)) = self.single_term() {
            return rhs.scale(c).shift(*e);
        }
        let mut out = PolyUZ::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &PolyUZ {
    type Output = PolyUZ;
    fn neg(self) -> PolyUZ {
        PolyUZ { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, name: &str, e: i32) -> fmt::Result {
    if e == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{e}")
    }
}

impl fmt::Display for PolyUZ {
    /// Sum of monomials `c*u^a*z^b`, highest u-degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let neg_rational = c.is_rational() && c.rational_part() < &num_rational::BigRational::zero();
            let shown = if neg_rational { -c } else { c.clone() };
            match (k, neg_rational) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let has_vars = a != 0 || b != 0;
            let mut need_star = false;
            if !(has_vars && shown.is_one_value()) {
                write!(f, "{shown}")?;
                need_star = true;
            }
            for (name, e) in [("u", a), ("z", b)] {
                if e != 0 {
                    if need_star {
                        write!(f, "*")?;
                    }
                    write_var(f, name, e)?;
                    need_star = true;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_cancellation() {
        let u = PolyUZ::u();
        let z = PolyUZ::z();
        let one = PolyUZ::one();
        let a = &u + &one;
        let b = &u - &one;
        let p = &a * &b;
        let expect = &(&u * &u) - &one;
        assert_eq!(p, expect);
        assert!((&(&u * &z) - &(&z * &u)).is_zero());
    }

    #[test]
    fn laurent_shift() {
        let u = PolyUZ::u();
        let inv = PolyUZ::monomial(CycloNum::one(), (-1, 0));
        assert!((&u * &inv).is_one());
    }

    #[test]
    fn rendering() {
        let u = PolyUZ::u();
        let z = PolyUZ::z();
        let p = &(&(&u * &z) - &PolyUZ::constant(CycloNum::from_ratio(1, 2))) + &z.pow(2);
        assert_eq!(p.to_string(), "u*z + z^2 - 1/2");
        let q = PolyUZ::monomial(CycloNum::theta(3), (-1, 0));
        assert_eq!(q.to_string(), "(θ)*u^-1");
    }
}
