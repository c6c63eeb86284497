//! The E-condition on trace parameters: for `1 ≤ m ≤ d-1`,
//!
//! ```text
//! Σ_s x_{m+s} x_{d-s} = x_m Σ_s x_s x_{d-s}      (indices mod d, x_0 = x_d = 1)
//! ```
//!
//! Exact solutions come from built-in families and are checked on
//! construction; numeric ones come from a seeded Newton search.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::CycloNum;
use crate::trace::TraceParams;

pub const DEFAULT_TOL: f64 = 1e-10;
const DEDUP_TOL: f64 = 1e-6;
const MAX_NEWTON_STEPS: usize = 200;
const ZETA_EPS: f64 = 1e-8;

fn x_at<T: Clone + One>(xs: &[T], d: u32, k: i64) -> T {
    match k.rem_euclid(d as i64) {
        0 => T::one(),
        j => xs[j as usize - 1].clone(),
    }
}

fn check_len(len: usize, d: u32) -> Result<()> {
    if d == 0 || len + 1 != d as usize {
        return Err(Error::Invalid(format!("expected {} values for d={d}, got {len}", d.saturating_sub(1))));
    }
    Ok(())
}

/// `(1/d) Σ_s x_s x_{d-s}` generalized to any shift, without the `1/d`.
fn shifted_sum<T>(xs: &[T], d: u32, m: i64) -> T
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    let d64 = d as i64;
    (0..d64).fold(T::zero(), |acc, s| acc + x_at(xs, d, m + s) * x_at(xs, d, d64 - s))
}

/// Residuals `LHS_m − RHS_m` for `m = 1..d-1`.
pub fn verify<T>(xs: &[T], d: u32) -> Result<Vec<T>>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    check_len(xs.len(), d)?;
    let total = shifted_sum(xs, d, 0);
    Ok((1..d as i64)
        .map(|m| shifted_sum(xs, d, m) - x_at(xs, d, m) * total.clone())
        .collect())
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn zeta_of<T>(xs: &[T], d: u32) -> T
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + From<f64>,
{
    shifted_sum(xs, d, 0) * T::from(1.0 / d as f64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    RootsOfUnity,
    Uniform,
    Subset(Vec<u32>),
    Numeric,
    Custom,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::RootsOfUnity => write!(f, "roots-of-unity"),
            Origin::Uniform => write!(f, "uniform"),
            Origin::Subset(s) => {
                let parts: Vec<String> = s.iter().map(u32::to_string).collect();
                write!(f, "subset:{}", parts.join(","))
            }
            Origin::Numeric => write!(f, "numeric"),
            Origin::Custom => write!(f, "custom"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    RootsOfUnity,
    Uniform,
    Subset(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum XValues {
    Exact { xs: Vec<CycloNum>, zeta: CycloNum },
    Numeric { xs: Vec<Complex64>, zeta: Complex64 },
}

/// A verified solution of the E-system with nonzero `ζ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ESolution {
    d: u32,
    origin: Origin,
    values: XValues,
}

impl ESolution {
    /// Checks the residual is exactly zero and `ζ ≠ 0`.
    pub fn exact(d: u32, xs: Vec<CycloNum>, origin: Origin) -> Result<Self> {
        if verify(&xs, d)?.iter().any(|r| !r.is_zero()) {
            return Err(Error::NotESolution);
        }
        let zeta = shifted_sum(&xs, d, 0) * CycloNum::from_ratio(1, d as i64);
        if zeta.is_zero() {
            return Err(Error::ZeroZeta);
        }
        Ok(ESolution { d, origin, values: XValues::Exact { xs, zeta } })
    }

    /// Checks the max-norm residual is below `tol` and `ζ` is not near zero.
    pub fn numeric(d: u32, xs: Vec<Complex64>, tol: f64) -> Result<Self> {
        let res = verify(&xs, d)?;
        if !(max_norm(&res) < tol) {
            return Err(Error::NotESolution);
        }
        let zeta = zeta_of(&xs, d);
        if zeta.norm() < ZETA_EPS {
            return Err(Error::ZeroZeta);
        }
        Ok(ESolution { d, origin: Origin::Numeric, values: XValues::Numeric { xs, zeta } })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn values(&self) -> &XValues {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, XValues::Exact { .. })
    }

    pub fn exact_xs(&self) -> Option<&[CycloNum]> {
        match &self.values {
            XValues::Exact { xs, .. } => Some(xs),
            XValues::Numeric { .. } => None,
        }
    }

    pub fn exact_zeta(&self) -> Option<&CycloNum> {
        match &self.values {
            XValues::Exact { zeta, .. } => Some(zeta),
            XValues::Numeric { .. } => None,
        }
    }

    pub fn complex_xs(&self) -> Vec<Complex64> {
        match &self.values {
            XValues::Exact { xs, .. } => xs.iter().map(CycloNum::to_complex).collect(),
            XValues::Numeric { xs, .. } => xs.clone(),
        }
    }

    pub fn complex_zeta(&self) -> Complex64 {
        match &self.values {
            XValues::Exact { zeta, .. } => zeta.to_complex(),
            XValues::Numeric { zeta, .. } => *zeta,
        }
    }

    /// Max-norm residual of the numeric values.
    pub fn residual(&self) -> f64 {
        max_norm(&verify(&self.complex_xs(), self.d).expect("length checked at construction"))
    }

    /// Exact trace parameters; numeric solutions cannot feed exact traces.
    pub fn trace_params(&self) -> Result<TraceParams> {
        match &self.values {
            XValues::Exact { xs, .. } => TraceParams::new(self.d, xs.clone()),
            XValues::Numeric { .. } => Err(Error::Invalid("numeric E-solution has no exact trace parameters".into())),
        }
    }
}

/// A member of one of the built-in solution families, verified before return.
pub fn family(kind: &Family, d: u32) -> Result<ESolution> {
    if d == 0 {
        return Err(Error::Invalid("modulus must be positive".into()));
    }
    let d64 = d as i64;
    let (xs, origin) = match kind {
        Family::RootsOfUnity => ((1..d64).map(|i| CycloNum::theta_pow(d, i)).collect(), Origin::RootsOfUnity),
        Family::Uniform => {
            let xs = (1..d64)
                .map(|i| {
                    let sign = if (i * (d64 - 1)) % 2 == 0 { -1 } else { 1 };
                    CycloNum::from_ratio(sign, d64 - 1)
                })
                .collect();
            (xs, Origin::Uniform)
        }
        Family::Subset(s) => {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::Invalid("subset must be nonempty".into()));
            }
            if let Some(&bad) = s.iter().find(|&&x| x >= d) {
                return Err(Error::Invalid(format!("subset element {bad} not below d={d}")));
            }
            let inv = CycloNum::from_ratio(1, s.len() as i64);
            let xs = (1..d64)
                .map(|m| {
                    let sum = s
                        .iter()
                        .fold(CycloNum::zero(), |acc, &k| acc + CycloNum::theta_pow(d, k as i64 * m));
                    sum * &inv
                })
                .collect();
            (xs, Origin::Subset(s))
        }
    };
    ESolution::exact(d, xs, origin)
}

fn residual_and_jacobian(xs: &[Complex64], d: u32) -> (DVector<Complex64>, DMatrix<Complex64>) {
    let k = xs.len();
    let d64 = d as i64;
    let var = |j: i64| -> Option<usize> {
        match j.rem_euclid(d64) {
            0 => None,
            v => Some(v as usize - 1),
        }
    };
    let x = |j: i64| x_at(xs, d, j);
    let f = DVector::from_vec(verify(xs, d).expect("length checked by caller"));
    let total = shifted_sum(xs, d, 0);
    // gradient of Σ_s x_s x_{d-s}
    let mut dtotal = vec![Complex64::zero(); k];
    for s in 0..d64 {
        if let Some(v) = var(s) {
            dtotal[v] += x(d64 - s);
        }
        if let Some(v) = var(d64 - s) {
            dtotal[v] += x(s);
        }
    }
    let mut jac = DMatrix::from_element(k, k, Complex64::zero());
    for m in 1..d64 {
        let row = m as usize - 1;
        for s in 0..d64 {
            if let Some(v) = var(m + s) {
                jac[(row, v)] += x(d64 - s);
            }
            if let Some(v) = var(d64 - s) {
                jac[(row, v)] += x(m + s);
            }
        }
        jac[(row, row)] -= total;
        for v in 0..k {
            jac[(row, v)] -= x(m) * dtotal[v];
        }
    }
    (f, jac)
}

fn newton(start: Vec<Complex64>, d: u32, tol: f64) -> Option<Vec<Complex64>> {
    let mut xs = start;
    for _ in 0..MAX_NEWTON_STEPS {
        let (f, jac) = residual_and_jacobian(&xs, d);
        let fmax = f.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if !fmax.is_finite() {
            return None;
        }
        if fmax < tol * 1e-3 {
            return Some(xs);
        }
        let step = jac.lu().solve(&f)?;
        if step.iter().any(|c| !c.is_finite()) {
            return None;
        }
        for (x, s) in xs.iter_mut().zip(step.iter()) {
            *x -= s;
        }
        if step.iter().map(|c| c.norm()).fold(0.0, f64::max) < 1e-15 {
            break;
        }
    }
    let res = max_norm(&verify(&xs, d).ok()?);
    (res < tol).then_some(xs)
}

/// Newton's method from `attempts` seeded random starts in the box
/// `[-1.5, 1.5]²` per coordinate. Returns distinct (within `1e-6`) solutions
/// with residual below `tol` and `ζ` away from zero.
pub fn solve_numeric(d: u32, attempts: usize, seed: u64, tol: f64) -> Result<Vec<ESolution>> {
    if d == 0 || d > 8 {
        return Err(Error::Invalid(format!("numeric search supports 1 ≤ d ≤ 8, got {d}")));
    }
    if d == 1 {
        return Ok(vec![ESolution::numeric(1, Vec::new(), tol)?]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<ESolution> = Vec::new();
    for _ in 0..attempts {
        let start: Vec<Complex64> = (1..d)
            .map(|_| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
            .collect();
        let Some(xs) = newton(start, d, tol) else { continue };
        let Ok(sol) = ESolution::numeric(d, xs, tol) else { continue };
        let cand = sol.complex_xs();
        let dup = found.iter().any(|s| {
            s.complex_xs().iter().zip(&cand).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) < DEDUP_TOL
        });
        if !dup {
            found.push(sol);
        }
    }
    Ok(found)
}
