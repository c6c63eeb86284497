//! Seeded property suites shared by the `verify` subcommand and the test
//! targets. Each suite tallies passes and failures per named property.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{random_word_with, Letter, SingularBraidWord};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::invariant::{markov_invariance_with, skein_check_with, DeltaEvaluator, DeltaParams, SkeinSite};
use crate::trace::{zeta_shift, TraceParams, Tracer};
use crate::yalgebra::{delta_map, e_elem, g_elem, g_inv_elem, g_power, p_elem, t_elem, Element, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Trace,
    Markov,
    Skein,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relations" => Ok(Suite::Relations),
            "trace" => Ok(Suite::Trace),
            "markov" => Ok(Suite::Markov),
            "skein" => Ok(Suite::Skein),
            other => Err(Error::Invalid(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Relations => "relations",
            Suite::Trace => "trace",
            Suite::Markov => "markov",
            Suite::Skein => "skein",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    tallies: Vec<Tally>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn tallies(&self) -> &[Tally] {
        &self.tallies
    }

    pub fn tally(&self, name: &str) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.name == name)
    }

    pub fn passed(&self) -> usize {
        self.tallies.iter().map(|t| t.passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.tallies.iter().map(|t| t.failed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }

    fn slot(&mut self, name: &str) -> &mut Tally {
        if let Some(i) = self.tallies.iter().position(|t| t.name == name) {
            return &mut self.tallies[i];
        }
        self.tallies.push(Tally { name: name.to_string(), ..Tally::default() });
        self.tallies.last_mut().unwrap()
    }

    /// Records one outcome; errors count as failures.
    pub fn record(&mut self, name: &str, outcome: Result<bool>, context: impl FnOnce() -> String) {
        let t = self.slot(name);
        match outcome {
            Ok(true) => t.passed += 1,
            Ok(false) => {
                t.failed += 1;
                t.first_failure.get_or_insert_with(context);
            }
            Err(e) => {
                t.failed += 1;
                t.first_failure.get_or_insert_with(|| format!("{}: {e}", context()));
            }
        }
    }

    pub fn merge(&mut self, other: Report) {
        for t in other.tallies {
            let s = self.slot(&t.name);
            s.passed += t.passed;
            s.failed += t.failed;
            if s.first_failure.is_none() {
                s.first_failure = t.first_failure;
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tallies {
            write!(f, "{:<28} pass {:>5}  fail {:>5}", t.name, t.passed, t.failed)?;
            if let Some(msg) = &t.first_failure {
                write!(f, "  first failure: {msg}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn same(a: Result<Element>, b: Result<Element>) -> Result<bool> {
    Ok(a? == b?)
}

/// The algebra relations at one `(d, n)`, each pitted against an
/// independent construction.
pub fn relations(d: u32, n: usize) -> Result<Report> {
    let mut r = Report::new();
    let one = Element::one(d, n)?;
    let u = Scalar::u();
    let um1 = &u - &Scalar::one();
    let uinv_m1 = &Scalar::u_pow(-1) - &Scalar::one();
    let g = |i| g_elem(i, d, n);
    let gi = |i| g_inv_elem(i, d, n);
    let t = |j| t_elem(j, d, n);
    let e = |i| e_elem(i, 0, d, n);
    // e_i (1 - g_i) built by plain multiplication
    let p_mul = |i| e(i)?.mul(&one.checked_sub(&g(i)?)?);
    let ctx = |what: &'static str, i: usize, j: usize| move || format!("{what} (d={d}, n={n}, i={i}, j={j})");

    for j in 1..=n {
        r.record("t order d", same(t(j)?.pow(d), Ok(one.clone())), ctx("t^d", j, 0));
        for k in 1..=n {
            r.record("t commute", same(t(j)?.mul(&t(k)?), t(k)?.mul(&t(j)?)), ctx("t t", j, k));
        }
        for i in 1..n {
            let sj = if j == i { i + 1 } else if j == i + 1 { i } else { j };
            r.record("t through g", same(t(j)?.mul(&g(i)?), g(i)?.mul(&t(sj)?)), ctx("t g", i, j));
        }
    }
    for i in 1..n {
        let (gi_, ei) = (g(i)?, e(i)?);
        let quad = one.checked_add(&ei.scale(&um1))?.checked_sub(&ei.mul(&gi_)?.scale(&um1))?;
        r.record("quadratic", same(gi_.mul(&gi_), Ok(quad)), ctx("g^2", i, 0));
        let inv = gi_.checked_sub(&ei.scale(&uinv_m1))?.checked_add(&ei.mul(&gi_)?.scale(&uinv_m1))?;
        r.record("inverse formula", same(gi(i), Ok(inv)), ctx("g^-1", i, 0));
        r.record("inverse", same(gi_.mul(&gi(i)?), Ok(one.clone())), ctx("g g^-1", i, 0));
        r.record("inverse", same(gi(i)?.mul(&gi_), Ok(one.clone())), ctx("g^-1 g", i, 0));
        r.record("e idempotent", same(ei.mul(&ei), Ok(ei.clone())), ctx("e^2", i, 0));
        r.record("e commutes with g", same(ei.mul(&gi_), gi_.mul(&ei)), ctx("e g", i, 0));

        let p = p_elem(i, d, n)?;
        r.record("p definition", same(p_mul(i), Ok(p.clone())), ctx("p", i, 0));
        r.record("e p = p e = p", same(ei.mul(&p), Ok(p.clone())), ctx("e p", i, 0));
        r.record("e p = p e = p", same(p.mul(&ei), Ok(p.clone())), ctx("p e", i, 0));
        let minus_up = p.scale(&-u.clone());
        r.record("g p = p g = -u p", same(gi_.mul(&p), Ok(minus_up.clone())), ctx("g p", i, 0));
        r.record("g p = p g = -u p", same(p.mul(&gi_), Ok(minus_up)), ctx("p g", i, 0));
        let mut pk = p.clone();
        let mut factor = Scalar::one();
        for k in 2..=5u32 {
            pk = pk.mul(&p)?;
            factor = &factor * &(&u + &Scalar::one());
            r.record("p power", Ok(pk == p.scale(&factor)), ctx("p^k", i, k as usize));
        }
        r.record("quadratic via p", same(gi_.mul(&gi_), one.checked_add(&p.scale(&um1))), ctx("g^2 p", i, 0));
        r.record("g - g^-1 = (1/u - 1) p", same(gi_.checked_sub(&gi(i)?), Ok(p.scale(&uinv_m1))), ctx("g-g^-1", i, 0));

        let mut up = one.clone();
        let mut down = one.clone();
        for m in 1..=6i64 {
            up = up.mul(&gi_)?;
            down = down.mul(&gi(i)?)?;
            r.record("power closed form", same(g_power(i, m, d, n), Ok(up.clone())), ctx("g^m", i, m as usize));
            r.record("power closed form", same(g_power(i, -m, d, n), Ok(down.clone())), ctx("g^-m", i, m as usize));
        }
        r.record("power closed form", same(g_power(i, 0, d, n), Ok(one.clone())), ctx("g^0", i, 0));

        for j in 1..n {
            let (gj, ej, pj) = (g(j)?, e(j)?, p_elem(j, d, n)?);
            r.record("e commute", same(ei.mul(&ej), ej.mul(&ei)), ctx("e e", i, j));
            let dist = i.abs_diff(j);
            if dist > 1 {
                r.record("braid far", same(gi_.mul(&gj), gj.mul(&gi_)), ctx("g g", i, j));
                r.record("e g far", same(ei.mul(&gj), gj.mul(&ei)), ctx("e g", i, j));
                r.record("g p far", same(gi_.mul(&pj), pj.mul(&gi_)), ctx("g p", i, j));
                r.record("p p far", same(p.mul(&pj), pj.mul(&p)), ctx("p p", i, j));
            } else if dist == 1 {
                let gig = gi_.mul(&gj)?;
                r.record("braid adjacent", same(gig.mul(&gi_), gj.mul(&gi_)?.mul(&gj)), ctx("g g g", i, j));
                r.record("e g g adjacent", same(ej.mul(&gig), gig.mul(&ei)), ctx("e g g", i, j));
                r.record("p g g adjacent", same(pj.mul(&gig), gig.mul(&p)), ctx("p g g", i, j));
            }
        }
    }
    singular_monoid_relations(&mut r, d, n)?;
    Ok(r)
}

/// The defining relations of the singular braid monoid, pushed through `δ`.
fn singular_monoid_relations(r: &mut Report, d: u32, n: usize) -> Result<()> {
    use Letter::{Sigma, SigmaInv, Tau};
    let image = |letters: Vec<Letter>| -> Result<Element> { delta_map(&SingularBraidWord::new(n, letters)?, d) };
    let mut check = |lhs: Vec<Letter>, rhs: Vec<Letter>| {
        let ctx = format!("{lhs:?} vs {rhs:?} (d={d}, n={n})");
        r.record("singular braid relations", same(image(lhs), image(rhs)), || ctx);
    };
    for i in 1..n {
        check(vec![Sigma(i), SigmaInv(i)], vec![]);
        check(vec![SigmaInv(i), Sigma(i)], vec![]);
        check(vec![Sigma(i), Tau(i)], vec![Tau(i), Sigma(i)]);
        for j in 1..n {
            match i.abs_diff(j) {
                0 => {}
                1 => {
                    check(vec![Sigma(i), Sigma(j), Sigma(i)], vec![Sigma(j), Sigma(i), Sigma(j)]);
                    check(vec![Sigma(i), Sigma(j), Tau(i)], vec![Tau(j), Sigma(i), Sigma(j)]);
                }
                _ => {
                    check(vec![Sigma(i), Sigma(j)], vec![Sigma(j), Sigma(i)]);
                    check(vec![Sigma(i), Tau(j)], vec![Tau(j), Sigma(i)]);
                    check(vec![Tau(i), Tau(j)], vec![Tau(j), Tau(i)]);
                }
            }
        }
    }
    Ok(())
}

/// Sum of `terms` random monomials with small coefficients in `Z[u^±, z^±]`.
pub fn random_element<R: Rng>(rng: &mut R, d: u32, n: usize, terms: usize) -> Result<Element> {
    let mut x = Element::zero(d, n)?;
    for _ in 0..terms {
        let framing: Vec<i64> = (0..n).map(|_| rng.gen_range(0..d as i64)).collect();
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(rng);
        let w = Permutation::from_images(&images).expect("shuffle of 1..=n");
        let k = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
        let c = &(&Scalar::from_int(k) * &Scalar::u_pow(rng.gen_range(-1..=1))) * &Scalar::z_pow(rng.gen_range(-1..=1));
        x = x.checked_add(&Element::term(d, &framing, w, c)?)?;
    }
    Ok(x)
}

pub struct TraceConfig {
    pub samples: usize,
    pub max_strands: usize,
    pub seed: u64,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig { samples: 50, max_strands: 4, seed: 1 }
    }
}

/// Trace rules on random elements. The multiplicative rules for `e_n` and
/// `p_n` are only expected to hold when the parameters solve the E-system.
pub fn trace_properties(params: &TraceParams, cfg: &TraceConfig) -> Result<Report> {
    let d = params.d();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut tracer = Tracer::new(params.clone());
    let mut r = Report::new();
    let zeta = Scalar::from_cyclo(params.zeta().clone());
    let tr_p = &zeta - &Scalar::z();
    for s in 0..cfg.samples {
        let n = rng.gen_range(2..=cfg.max_strands);
        let a = random_element(&mut rng, d, n, 3)?;
        let b = random_element(&mut rng, d, n, 3)?;
        let ctx = || format!("sample {s} (d={d}, n={n})");
        let conj = (|| Ok(tracer.trace(&a.mul(&b)?)? == tracer.trace(&b.mul(&a)?)?))();
        r.record("tr(ab) = tr(ba)", conj, ctx);

        // x in Y_{d,m} embedded in Y_{d,m+1}
        let m = rng.gen_range(1..cfg.max_strands);
        let x = random_element(&mut rng, d, m, 3)?;
        let xe = x.embed(m + 1)?;
        let ctx = || format!("sample {s} (d={d}, n={m})");
        let tx = tracer.trace(&x)?;
        let markov = (|| Ok(tracer.trace(&xe.mul(&g_elem(m, d, m + 1)?)?)? == &tx * &Scalar::z()))();
        r.record("tr(x g_n) = z tr(x)", markov, ctx);
        let k = rng.gen_range(0..d as i64);
        let framing = (|| {
            let lhs = tracer.trace(&xe.mul(&t_elem(m + 1, d, m + 1)?.pow(k as u32)?)?)?;
            Ok(lhs == tx.scale(&params.x(k)))
        })();
        r.record("tr(x t_n+1^k) = x_k tr(x)", framing, ctx);
        let thm = (|| Ok(tracer.trace(&xe.mul(&e_elem(m, 0, d, m + 1)?)?)? == &tx * &zeta))();
        r.record("tr(x e_n) = zeta tr(x)", thm, ctx);
        let cor = (|| Ok(tracer.trace(&xe.mul(&p_elem(m, d, m + 1)?)?)? == &tx * &tr_p))();
        r.record("tr(x p_n) = (zeta-z) tr(x)", cor, ctx);
    }
    for n in 2..=cfg.max_strands {
        for i in 1..n {
            for m in 0..d {
                let ok = (|| Ok(tracer.trace(&e_elem(i, m, d, n)?)? == Scalar::from_cyclo(zeta_shift(m as i64, params))))();
                r.record("tr(e^(m)) = zeta^(m)", ok, || format!("d={d}, n={n}, i={i}, m={m}"));
            }
        }
    }
    Ok(r)
}

pub struct WordConfig {
    pub samples: usize,
    pub max_strands: usize,
    pub max_len: usize,
    pub rounds: usize,
    pub seed: u64,
}

impl Default for WordConfig {
    fn default() -> Self {
        WordConfig { samples: 40, max_strands: 4, max_len: 8, rounds: 10, seed: 1 }
    }
}

fn random_start<R: Rng>(rng: &mut R, cfg: &WordConfig) -> SingularBraidWord {
    let n = rng.gen_range(2..=cfg.max_strands);
    let len = rng.gen_range(0..=cfg.max_len);
    random_word_with(rng, n, len, true)
}

/// Random words pushed through random Markov moves; one tally entry per orbit.
/// Orbits that include a stabilization are tallied separately as well.
pub fn markov_orbits(params: &DeltaParams, cfg: &WordConfig) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ev = DeltaEvaluator::new(params.clone());
    let mut r = Report::new();
    for s in 0..cfg.samples {
        let w = random_start(&mut rng, cfg);
        let report = markov_invariance_with(&mut ev, &w, cfg.rounds, &mut rng)?;
        let detail = || match &report.mismatch {
            Some(m) => format!("word {w} -> {} after {:?} (step {})", m.word, m.mv, m.step),
            None => format!("word {w}"),
        };
        r.record("orbit constant", Ok(report.passed()), || format!("sample {s}: {}", detail()));
        if report.stabilized() {
            r.record("orbit with stabilization", Ok(report.passed()), || format!("sample {s}: {}", detail()));
        }
    }
    Ok(r)
}

pub fn skein_sweep(params: &DeltaParams, cfg: &WordConfig) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ev = DeltaEvaluator::new(params.clone());
    let mut r = Report::new();
    for s in 0..cfg.samples {
        let w = random_start(&mut rng, cfg);
        let site = SkeinSite { pos: rng.gen_range(0..=w.len()), index: rng.gen_range(1..w.strands()) };
        let ok = skein_check_with(&mut ev, &w, site);
        r.record("skein relation", ok, || format!("sample {s}: word {w}, site {site:?}"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esystem::{family, Family};
    use crate::field::CycloNum;

    #[test]
    fn relations_small() {
        for d in 1..=2 {
            let r = relations(d, 3).unwrap();
            assert!(r.ok(), "{r}");
            assert!(r.passed() > 50);
        }
    }

    #[test]
    fn trace_suite_positive_and_negative() {
        let cfg = TraceConfig { samples: 8, max_strands: 3, seed: 5 };
        let sol = family(&Family::Uniform, 3).unwrap();
        let good = trace_properties(&sol.trace_params().unwrap(), &cfg).unwrap();
        assert!(good.ok(), "{good}");
        let third = CycloNum::from_ratio(1, 3);
        let bad = TraceParams::new(3, vec![third.clone(), third]).unwrap();
        let r = trace_properties(&bad, &cfg).unwrap();
        assert_eq!(r.tally("tr(ab) = tr(ba)").unwrap().failed, 0);
        assert_eq!(r.tally("tr(x g_n) = z tr(x)").unwrap().failed, 0);
        assert!(r.tally("tr(x e_n) = zeta tr(x)").unwrap().failed > 0);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Relations, Suite::Trace, Suite::Markov, Suite::Skein] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn report_merge_and_errors() {
        let mut a = Report::new();
        a.record("x", Ok(true), String::new);
        let mut b = Report::new();
        b.record("x", Err(Error::ZeroDivisor), || "ctx".into());
        a.merge(b);
        let t = a.tally("x").unwrap();
        assert_eq!((t.passed, t.failed), (1, 1));
        assert!(t.first_failure.as_deref().unwrap().contains("zero divisor"));
    }
}
