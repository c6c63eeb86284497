//! The normalized invariant `Δ` of closed singular braids.
//!
//! For a word `w` on `n` strands with exponent `ε`,
//! `Δ(ŵ) = z^{1-n} (√λ)^{ε-n+1} tr(δ(w))`. The square root of `λ` is kept as a
//! formal half power: an [`InvariantValue`] is `f · λ^{half/2}` with
//! `half ∈ {0, 1}` and every integer power of `λ` folded into `f`.

use std::fmt;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{Direction, Letter, MoveSpec, SingularBraidWord};
use crate::error::{Error, Result};
use crate::esystem::ESolution;
use crate::field::{CycloNum, Scalar};
use crate::trace::{TraceParams, Tracer};
use crate::yalgebra::{delta_map, MAX_STRANDS};

/// `f · λ^{half/2}`.
#[derive(Clone, Debug)]
pub struct InvariantValue {
    f: Scalar,
    half: u8,
}

impl InvariantValue {
    pub fn new(f: Scalar, half: u8) -> Self {
        InvariantValue { f, half: half % 2 }
    }

    pub fn f(&self) -> &Scalar {
        &self.f
    }

    pub fn half(&self) -> u8 {
        self.half
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    /// Multiplies by `λ^{k/2}`.
    pub fn mul_sqrt_lambda(&self, lambda: &Scalar, k: i32) -> Result<Self> {
        let total = self.half as i32 + k;
        let half = total.rem_euclid(2);
        let whole = (total - half) / 2;
        let f = &self.f * &lambda.powi(whole)?;
        Ok(InvariantValue { f, half: half as u8 })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        InvariantValue { f: &self.f * c, half: self.half }
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        let rhs = if negate { -other.f.clone() } else { other.f.clone() };
        if other.f.is_zero() {
            return Ok(self.clone());
        }
        if self.f.is_zero() {
            return Ok(InvariantValue { f: rhs, half: other.half });
        }
        if self.half != other.half {
            return Err(Error::Invalid("cannot add values with different powers of sqrt(lambda)".into()));
        }
        Ok(InvariantValue { f: &self.f + &rhs, half: self.half })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }
}

impl PartialEq for InvariantValue {
    fn eq(&self, other: &Self) -> bool {
        if self.f.is_zero() || other.f.is_zero() {
            return self.f.is_zero() && other.f.is_zero();
        }
        self.half == other.half && self.f == other.f
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half == 1 {
            let body = self.f.to_string();
            if body.contains(' ') {
                write!(f, "({body}) * sqrt(lambda)")
            } else {
                write!(f, "{body} * sqrt(lambda)")
            }
        } else {
            write!(f, "{}", self.f)
        }
    }
}

/// `λ = (z − (1−u)ζ) / (u z)`.
pub fn lambda_of(zeta: &CycloNum) -> Result<Scalar> {
    let zeta = Scalar::from_cyclo(zeta.clone());
    let one = Scalar::one();
    let num = &Scalar::z() - &(&(&one - &Scalar::u()) * &zeta);
    num.checked_div(&(&Scalar::u() * &Scalar::z()))
}

#[derive(Clone, Debug)]
pub struct DeltaParams {
    trace: TraceParams,
    lambda: Scalar,
    verified: bool,
}

impl DeltaParams {
    /// Parameters from an exact E-solution.
    pub fn new(sol: &ESolution) -> Result<Self> {
        let trace = sol.trace_params()?;
        let lambda = lambda_of(trace.zeta())?;
        Ok(DeltaParams { trace, lambda, verified: true })
    }

    /// Parameters from arbitrary trace values. The result is generally not a
    /// link invariant; this exists for negative controls.
    pub fn unverified(trace: TraceParams) -> Result<Self> {
        if trace.zeta().is_zero() {
            return Err(Error::ZeroZeta);
        }
        let lambda = lambda_of(trace.zeta())?;
        Ok(DeltaParams { trace, lambda, verified: false })
    }

    pub fn d(&self) -> u32 {
        self.trace.d()
    }

    pub fn trace_params(&self) -> &TraceParams {
        &self.trace
    }

    pub fn zeta(&self) -> Scalar {
        Scalar::from_cyclo(self.trace.zeta().clone())
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

/// Evaluates `Δ` repeatedly with one shared trace memo.
#[derive(Debug)]
pub struct DeltaEvaluator {
    params: DeltaParams,
    tracer: Tracer,
}

impl DeltaEvaluator {
    pub fn new(params: DeltaParams) -> Self {
        let tracer = Tracer::new(params.trace.clone());
        DeltaEvaluator { params, tracer }
    }

    pub fn params(&self) -> &DeltaParams {
        &self.params
    }

    pub fn trace_of(&mut self, w: &SingularBraidWord) -> Result<Scalar> {
        let x = delta_map(w, self.params.d())?;
        self.tracer.trace(&x)
    }

    pub fn delta(&mut self, w: &SingularBraidWord) -> Result<InvariantValue> {
        let tr = self.trace_of(w)?;
        let n = w.strands() as i64;
        let k = w.exponent() - n + 1;
        let base = InvariantValue::new(&tr * &Scalar::z_pow(1 - n as i32), 0);
        base.mul_sqrt_lambda(&self.params.lambda, k as i32)
    }
}

pub fn delta(w: &SingularBraidWord, params: &DeltaParams) -> Result<InvariantValue> {
    DeltaEvaluator::new(params.clone()).delta(w)
}

/// Where the crossing of a skein triple sits: before letter `pos`, on strands
/// `index, index+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeinSite {
    pub pos: usize,
    pub index: usize,
}

/// The three words of a skein triple: `σ_i`, `σ_i^{-1}`, `τ_i` inserted at `site`.
pub fn skein_triple(beta: &SingularBraidWord, site: SkeinSite) -> Result<[SingularBraidWord; 3]> {
    let i = site.index;
    Ok([
        beta.insert(site.pos, Letter::Sigma(i))?,
        beta.insert(site.pos, Letter::SigmaInv(i))?,
        beta.insert(site.pos, Letter::Tau(i))?,
    ])
}

/// `λ^{-1/2}Δ(L₊) − λ^{1/2}Δ(L₋) = (u^{-1}−1) λ^{-1/2} Δ(L×)`, exactly.
pub fn skein_check_with(ev: &mut DeltaEvaluator, beta: &SingularBraidWord, site: SkeinSite) -> Result<bool> {
    let [plus, minus, cross] = skein_triple(beta, site)?;
    let lambda = ev.params.lambda.clone();
    let lhs = ev
        .delta(&plus)?
        .mul_sqrt_lambda(&lambda, -1)?
        .checked_sub(&ev.delta(&minus)?.mul_sqrt_lambda(&lambda, 1)?)?;
    let c = &Scalar::u_pow(-1) - &Scalar::one();
    let rhs = ev.delta(&cross)?.mul_sqrt_lambda(&lambda, -1)?.scale(&c);
    Ok(lhs == rhs)
}

pub fn skein_check(beta: &SingularBraidWord, site: SkeinSite, params: &DeltaParams) -> Result<bool> {
    skein_check_with(&mut DeltaEvaluator::new(params.clone()), beta, site)
}

#[derive(Clone, Debug)]
pub struct Mismatch {
    pub step: usize,
    pub mv: MoveSpec,
    pub word: SingularBraidWord,
    pub expected: InvariantValue,
    pub found: InvariantValue,
}

#[derive(Clone, Debug)]
pub struct MarkovReport {
    pub start: SingularBraidWord,
    pub moves: Vec<MoveSpec>,
    pub mismatch: Option<Mismatch>,
}

impl MarkovReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    /// Whether some stabilization was applied before the first mismatch (or at all).
    pub fn stabilized(&self) -> bool {
        self.moves.iter().any(|m| matches!(m, MoveSpec::Stabilization { .. }))
    }
}

/// Strand cap for the random-move harness; stabilization is skipped at the cap.
pub const HARNESS_MAX_STRANDS: usize = 5;

fn random_move<R: Rng>(rng: &mut R, w: &SingularBraidWord, max_strands: usize) -> MoveSpec {
    let n = w.strands();
    let dir = |rng: &mut R| if rng.gen_bool(0.5) { Direction::FrontToBack } else { Direction::BackToFront };
    let mut options: Vec<MoveSpec> = Vec::new();
    if n >= 2 {
        let index = rng.gen_range(1..n);
        options.push(MoveSpec::RealConjugation { index, direction: dir(rng) });
    }
    if let Some(Letter::Tau(i)) = w.letters().first() {
        options.push(MoveSpec::SingularCommuting { index: *i, direction: Direction::FrontToBack });
    }
    if let Some(Letter::Tau(i)) = w.letters().last() {
        options.push(MoveSpec::SingularCommuting { index: *i, direction: Direction::BackToFront });
    }
    if n < max_strands.min(MAX_STRANDS) {
        options.push(MoveSpec::Stabilization { positive: rng.gen_bool(0.5) });
    }
    if w.is_destabilizable() {
        options.push(MoveSpec::Destabilization);
    }
    *options.choose(rng).expect("stabilization or conjugation is always available")
}

/// Applies `rounds` random Markov moves starting from `w`, comparing `Δ`
/// after each against its starting value. Stops at the first mismatch.
pub fn markov_invariance_with(
    ev: &mut DeltaEvaluator,
    w: &SingularBraidWord,
    rounds: usize,
    rng: &mut impl Rng,
) -> Result<MarkovReport> {
    let expected = ev.delta(w)?;
    let mut cur = w.clone();
    let mut moves = Vec::with_capacity(rounds);
    for step in 0..rounds {
        let mv = random_move(rng, &cur, HARNESS_MAX_STRANDS);
        cur = cur.apply_move(mv)?;
        moves.push(mv);
        let found = ev.delta(&cur)?;
        if found != expected {
            let mismatch = Mismatch { step, mv, word: cur, expected, found };
            return Ok(MarkovReport { start: w.clone(), moves, mismatch: Some(mismatch) });
        }
    }
    Ok(MarkovReport { start: w.clone(), moves, mismatch: None })
}

pub fn markov_invariance(w: &SingularBraidWord, params: &DeltaParams, rounds: usize, seed: u64) -> Result<MarkovReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    markov_invariance_with(&mut DeltaEvaluator::new(params.clone()), w, rounds, &mut rng)
}
