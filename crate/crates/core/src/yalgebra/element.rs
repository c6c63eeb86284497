//! Elements of the Yokonuma-Hecke algebra as sparse combinations of
//! canonical monomials `t_1^{a_1}⋯t_n^{a_n}·g_w`.
//!
//! `g_w` is the product of generators along the staircase word of `w`.
//! Framings are always kept to the left of the braid part; a `t_j` is moved
//! across with `g_w t_j = t_{w(j)} g_w`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::perm::{Permutation, MAX_STRANDS};
use crate::error::{Error, Result};
use crate::field::Scalar;

/// Basis monomial `t^a g_w`; framing exponents are reduced mod d.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    w: Permutation,
    a: [u8; MAX_STRANDS],
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial { w: Permutation::identity(n), a: [0; MAX_STRANDS] }
    }

    /// `framing` holds `a_1..a_n` (reduced mod `d` by the caller's `Element`).
    pub fn new(framing: &[u8], w: Permutation) -> Self {
        assert_eq!(framing.len(), w.n());
        let mut a = [0; MAX_STRANDS];
        a[..framing.len()].copy_from_slice(framing);
        Monomial { w, a }
    }

    pub fn perm(&self) -> &Permutation {
        &self.w
    }

    pub fn framing(&self) -> &[u8] {
        &self.a[..self.w.n()]
    }

    pub fn n(&self) -> usize {
        self.w.n()
    }

    #[inline]
    fn shift_framing(&mut self, pos: usize, by: u32, d: u32) {
        self.a[pos] = ((self.a[pos] as u32 + by) % d) as u8;
    }

    /// `t^a g_w · t^b = t^{a + w(b)} g_w`.
    fn times_framing(mut self, b: &[u8], d: u32) -> Self {
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                let pos = self.w.at(j);
                self.shift_framing(pos, bj as u32, d);
            }
        }
        self
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self
            .framing()
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(j, &a)| format!("t{}^{}", j + 1, a))
            .collect();
        if !t.is_empty() {
            write!(f, "{} * ", t.join("*"))?;
        }
        write!(f, "g{}", self.w)
    }
}

/// Right factor accepted by [`Element::mul_gen_right`]; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    G(usize),
    GInv(usize),
    T(usize),
}

#[derive(Clone, Debug)]
pub struct Element {
    d: u32,
    n: usize,
    terms: HashMap<Monomial, Scalar>,
}

fn accumulate(terms: &mut HashMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    use std::collections::hash_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl Element {
    fn check_ambient(d: u32, n: usize) -> Result<()> {
        if d == 0 || d > 255 {
            return Err(Error::Invalid(format!("modulus {d} out of range")));
        }
        if n == 0 || n > MAX_STRANDS {
            return Err(Error::Invalid(format!("strand count {n} out of range 1..={MAX_STRANDS}")));
        }
        Ok(())
    }

    pub fn zero(d: u32, n: usize) -> Result<Self> {
        Self::check_ambient(d, n)?;
        Ok(Element { d, n, terms: HashMap::new() })
    }

    pub fn one(d: u32, n: usize) -> Result<Self> {
        Self::scalar(d, n, Scalar::one())
    }

    pub fn scalar(d: u32, n: usize, c: Scalar) -> Result<Self> {
        let mut e = Self::zero(d, n)?;
        accumulate(&mut e.terms, Monomial::identity(n), c);
        Ok(e)
    }

    /// A single term `c · t^a g_w`; framing entries are reduced mod `d`.
    pub fn term(d: u32, framing: &[i64], w: Permutation, c: Scalar) -> Result<Self> {
        let n = w.n();
        if framing.len() != n {
            return Err(Error::Invalid("framing length differs from strand count".into()));
        }
        let mut e = Self::zero(d, n)?;
        let a: Vec<u8> = framing.iter().map(|&x| x.rem_euclid(d as i64) as u8).collect();
        accumulate(&mut e.terms, Monomial::new(&a, w), c);
        Ok(e)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    fn same_ambient(&self, other: &Element) -> Result<()> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::AmbientMismatch { d1: self.d, n1: self.n, d2: other.d, n2: other.n });
        }
        Ok(())
    }

    fn empty_like(&self) -> Element {
        Element { d: self.d, n: self.n, terms: HashMap::with_capacity(self.terms.len()) }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, *m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = self.empty_like();
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            accumulate(&mut out.terms, *m, x * c);
        }
        out
    }

    fn check_index(&self, i: usize, top: usize) -> Result<()> {
        if i == 0 || i > top {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(())
    }

    /// `self · t_j^k`.
    fn times_t(&self, j: usize, k: u32) -> Element {
        let mut out = self.empty_like();
        let k = k % self.d;
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let pos = m.w.at(j - 1);
            m2.shift_framing(pos, k, self.d);
            accumulate(&mut out.terms, m2, c.clone());
        }
        out
    }

    /// `self · e_i^{(m)}` where `e_i^{(m)} = (1/d) Σ_s t_i^{m+s} t_{i+1}^{-s}`.
    fn times_e(&self, i: usize, shift: u32) -> Element {
        let d = self.d;
        let mut out = self.empty_like();
        let inv_d = Scalar::from_ratio(1, d as i64);
        for (m, c) in &self.terms {
            let c = c * &inv_d;
            let (pi, pj) = (m.w.at(i - 1), m.w.at(i));
            for s in 0..d {
                let mut m2 = *m;
                m2.shift_framing(pi, shift + s, d);
                m2.shift_framing(pj, d - s, d);
                accumulate(&mut out.terms, m2, c.clone());
            }
        }
        out
    }

    /// `self · g_i`, using the quadratic relation when `g_i` is a right descent.
    fn times_g(&self, i: usize) -> Element {
        let d = self.d;
        let mut out = self.empty_like();
        // (u - 1)/d
        let k = (Scalar::u() - Scalar::one()).scale(&crate::field::CycloNum::from_ratio(1, d as i64));
        for (m, c) in &self.terms {
            if m.w.ascends_at(i) {
                let m2 = Monomial { w: m.w.mul_simple(i), a: m.a };
                accumulate(&mut out.terms, m2, c.clone());
                continue;
            }
            // t^a g_v g_i^2 with v = w s_i and g_v g_i = g_w
            let v = m.w.mul_simple(i);
            accumulate(&mut out.terms, Monomial { w: v, a: m.a }, c.clone());
            let ck = c * &k;
            let neg_ck = -&ck;
            let (pi, pj) = (v.at(i - 1), v.at(i));
            for s in 0..d {
                let mut a = Monomial { w: v, a: m.a };
                a.shift_framing(pi, s, d);
                a.shift_framing(pj, d - s, d);
                accumulate(&mut out.terms, a, ck.clone());
                accumulate(&mut out.terms, Monomial { w: m.w, a: a.a }, neg_ck.clone());
            }
        }
        out
    }

    pub fn mul_gen_right(&self, g: Gen) -> Result<Element> {
        match g {
            Gen::G(i) => {
                self.check_index(i, self.n - 1)?;
                Ok(self.times_g(i))
            }
            Gen::GInv(i) => {
                self.check_index(i, self.n - 1)?;
                // g_i^{-1} = g_i - (u^{-1} - 1) e_i + (u^{-1} - 1) e_i g_i
                let c = Scalar::u_pow(-1) - Scalar::one();
                let xe = self.times_e(i, 0);
                let xeg = xe.times_g(i);
                let corr = xeg.checked_sub(&xe)?.scale(&c);
                self.times_g(i).checked_add(&corr)
            }
            Gen::T(j) => {
                self.check_index(j, self.n)?;
                Ok(self.times_t(j, 1))
            }
        }
    }

    /// Right multiplication by `p_i = e_i (1 - g_i)`.
    pub fn mul_p_right(&self, i: usize) -> Result<Element> {
        self.check_index(i, self.n - 1)?;
        let xe = self.times_e(i, 0);
        xe.checked_sub(&xe.times_g(i))
    }

    /// Product in the algebra; each right-hand monomial is expanded into its
    /// framing followed by the generators of its staircase word.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_ambient(other)?;
        let d = self.d;
        let mut by_perm: HashMap<Permutation, Element> = HashMap::new();
        for (m, c) in &other.terms {
            let acc = by_perm.entry(m.w).or_insert_with(|| self.empty_like());
            let fr = m.framing();
            for (xm, xc) in &self.terms {
                accumulate(&mut acc.terms, xm.times_framing(fr, d), xc * c);
            }
        }
        let mut out = self.empty_like();
        for (w, mut acc) in by_perm {
            for i in w.staircase_word() {
                acc = acc.times_g(i);
            }
            for (m, c) in acc.terms {
                accumulate(&mut out.terms, m, c);
            }
        }
        Ok(out)
    }

    /// The same element in `Y_{d,n'}` for `n' ≥ n`.
    pub fn embed(&self, n: usize) -> Result<Element> {
        Self::check_ambient(self.d, n)?;
        if n < self.n {
            return Err(Error::Invalid("cannot embed into fewer strands".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial { w: m.w.extend(n), a: m.a }, c.clone()))
            .collect();
        Ok(Element { d: self.d, n, terms })
    }

    pub fn pow(&self, k: u32) -> Result<Element> {
        let mut acc = Element::one(self.d, self.n)?;
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        if self.d != other.d || self.n != other.n {
            return false;
        }
        self.terms.iter().all(|(m, c)| other.terms.get(m).is_some_and(|x| x == c))
            && other.terms.keys().all(|m| self.terms.contains_key(m))
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            d: self.d,
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// Panics on ambient mismatch; use [`Element::checked_add`] otherwise.
impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &'a Element) -> Element {
        self.checked_add(rhs).expect("ambient mismatch")
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &'a Element) -> Element {
        self.checked_sub(rhs).expect("ambient mismatch")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort();
        for (k, m) in keys.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) * {}", self.terms[m], m)?;
        }
        Ok(())
    }
}
