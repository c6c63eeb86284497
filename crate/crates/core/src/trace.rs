//! The Markov trace on `⋃_n Y_{d,n}(u)`.
//!
//! Computed on basis monomials by stripping the top strand:
//!
//! * one strand: `tr(t_1^a) = x_a`;
//! * `w` fixes `n`: `tr(X t_n^a) = x_a tr(X)`;
//! * otherwise `t^a g_w = X g_{n-1} Y` with `X, Y ∈ Y_{d,n-1}` from the
//!   staircase split, and `tr(X g_{n-1} Y) = tr(Y X g_{n-1}) = z tr(Y X)`.
//!
//! The parameters `x_1..x_{d-1}` are concrete cyclotomic numbers; `u` and `z`
//! stay symbolic.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{CycloNum, Scalar};
use crate::yalgebra::{Element, Gen, Monomial, Permutation};

#[derive(Clone, Debug, PartialEq)]
pub struct TraceParams {
    d: u32,
    xs: Vec<CycloNum>,
    zeta: CycloNum,
}

impl TraceParams {
    /// `xs` holds `x_1, …, x_{d-1}`; `x_0 = x_d = 1` is implicit.
    pub fn new(d: u32, xs: Vec<CycloNum>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        if xs.len() != d as usize - 1 {
            return Err(Error::Invalid(format!("expected {} trace parameters, got {}", d - 1, xs.len())));
        }
        let mut p = TraceParams { d, xs, zeta: CycloNum::zero() };
        p.zeta = zeta_shift(0, &p);
        Ok(p)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn xs(&self) -> &[CycloNum] {
        &self.xs
    }

    /// `ζ = tr(e_i)`.
    pub fn zeta(&self) -> &CycloNum {
        &self.zeta
    }

    /// `x_m` with the index taken mod d.
    pub fn x(&self, m: i64) -> CycloNum {
        let m = m.rem_euclid(self.d as i64) as usize;
        if m == 0 {
            CycloNum::one()
        } else {
            self.xs[m - 1].clone()
        }
    }
}

/// `ζ^{(m)} = (1/d) Σ_s x_{s+m} x_{d-s}`, indices mod d.
pub fn zeta_shift(m: i64, p: &TraceParams) -> CycloNum {
    let d = p.d as i64;
    let sum = (0..d).fold(CycloNum::zero(), |acc, s| acc + p.x(s + m) * p.x(d - s));
    sum * CycloNum::from_ratio(1, d)
}

/// Trace evaluator with a per-monomial memo; reuse one across many elements
/// sharing the same parameters.
#[derive(Debug)]
pub struct Tracer {
    params: TraceParams,
    cache: HashMap<Monomial, Scalar>,
}

impl Tracer {
    pub fn new(params: TraceParams) -> Self {
        Tracer { params, cache: HashMap::new() }
    }

    pub fn params(&self) -> &TraceParams {
        &self.params
    }

    pub fn trace(&mut self, x: &Element) -> Result<Scalar> {
        if x.d() != self.params.d {
            return Err(Error::ModulusMismatch { expected: self.params.d, found: x.d() });
        }
        let mut acc = Scalar::zero();
        for (m, c) in x.terms() {
            let t = self.trace_monomial(m)?;
            acc = &acc + &(c * &t);
        }
        Ok(acc)
    }

    fn trace_monomial(&mut self, m: &Monomial) -> Result<Scalar> {
        if let Some(v) = self.cache.get(m) {
            return Ok(v.clone());
        }
        let v = self.compute(m)?;
        self.cache.insert(*m, v.clone());
        Ok(v)
    }

    fn compute(&mut self, m: &Monomial) -> Result<Scalar> {
        let n = m.n();
        let a = m.framing();
        let top = a[n - 1] as i64;
        if n == 1 {
            return Ok(Scalar::from_cyclo(self.params.x(top)));
        }
        let (prime, split) = m.perm().staircase_split();
        let lower: Vec<i64> = a[..n - 1].iter().map(|&x| x as i64).collect();
        if split == n {
            let rest = Element::term(self.params.d, &lower, prime, Scalar::one())?;
            let t = self.trace(&rest)?;
            return Ok(t.scale(&self.params.x(top)));
        }
        let d = self.params.d;
        // X = t^{a_1..a_{n-1}} g_{w'}, Y = t_{n-1}^{a_n} g_{n-2} ⋯ g_split
        let x = Element::term(d, &lower, prime, Scalar::one())?;
        let mut yf = vec![0i64; n - 1];
        yf[n - 2] = top;
        let mut y = Element::term(d, &yf, Permutation::identity(n - 1), Scalar::one())?;
        for i in (split..n - 1).rev() {
            y = y.mul_gen_right(Gen::G(i))?;
        }
        let yx = y.mul(&x)?;
        let t = self.trace(&yx)?;
        Ok(&t * &Scalar::z())
    }
}

pub fn markov_trace(x: &Element, p: &TraceParams) -> Result<Scalar> {
    Tracer::new(p.clone()).trace(x)
}
