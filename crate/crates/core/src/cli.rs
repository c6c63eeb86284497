//! Command-line front end. [`run`] is the whole program minus process exit,
//! so tests can drive it with captured output.
//!
//! Exit codes: 0 success, 1 a verification suite reported failures,
//! 2 bad input (parse errors, rejected solutions), 3 degenerate parameter point.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::json;

use crate::braid::{parse_braid, SingularBraidWord};
use crate::checks::{markov_orbits, relations, skein_sweep, trace_properties, Report, Suite, TraceConfig, WordConfig};
use crate::error::{Error, Result};
use crate::esystem::{family, solve_numeric, ESolution, Family, Origin, DEFAULT_TOL};
use crate::field::{CycloNum, Rational};
use crate::invariant::{DeltaEvaluator, DeltaParams};
use crate::trace::{TraceParams, Tracer};
use crate::yalgebra::delta_map;

#[derive(Parser, Debug)]
#[command(name = "singknot", version, about = "Exact invariant of singular braids via Yokonuma-Hecke traces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalized invariant of the closure of a singular braid word.
    Delta(BraidArgs),
    /// Markov trace of the algebra image of a singular braid word.
    Trace(BraidArgs),
    /// Numeric search for solutions of the E-system.
    Esolve(EsolveArgs),
    /// Run a seeded verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct BraidArgs {
    /// Word such as "s1^2 s2^-1 t1"; the empty string is the unknot.
    #[arg(long, allow_hyphen_values = true)]
    pub braid: String,
    /// Strand count (defaults to one more than the largest index used).
    #[arg(long)]
    pub strands: Option<usize>,
    /// Order of the framing group (number of framing values).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub d: u32,
    /// roots-of-unity | uniform | subset:0,2 | custom:a+bi,...
    #[arg(long)]
    pub solution: String,
    /// Evaluation point, e.g. "u=0.5+0.1i,z=2".
    #[arg(long)]
    pub numeric: Option<String>,
    /// Emit a JSON object instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct EsolveArgs {
    /// Order of the framing group, at most 8.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
    pub d: u32,
    #[arg(long, default_value_t = 200)]
    pub attempts: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Emit a JSON array instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// relations | trace | markov | skein
    #[arg(long)]
    pub suite: String,
    /// Order of the framing group.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub d: u32,
    #[arg(long, default_value = "roots-of-unity")]
    pub solution: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of random samples (words or element pairs).
    #[arg(long)]
    pub samples: Option<usize>,
}

/// Trace parameters chosen on the command line, with the verified solution
/// when they satisfy the E-condition.
#[derive(Clone, Debug)]
pub struct Selection {
    pub trace: TraceParams,
    pub solution: Option<ESolution>,
}

impl Selection {
    pub fn delta_params(&self) -> Result<DeltaParams> {
        match &self.solution {
            Some(sol) => DeltaParams::new(sol),
            None => Err(Error::NotESolution),
        }
    }

    /// Like [`Selection::delta_params`] but falls back to unverified parameters.
    pub fn delta_params_any(&self) -> Result<DeltaParams> {
        match &self.solution {
            Some(sol) => DeltaParams::new(sol),
            None => DeltaParams::unverified(self.trace.clone()),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

/// Exact decimal or `p/q` literal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || invalid(format!("malformed number {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty()) || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(digits, scale);
    Ok(if neg { -r } else { r })
}

/// Splits `a+bi` into real and imaginary text (either may be absent).
fn split_complex(s: &str) -> Result<(Option<&str>, Option<&str>)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(invalid("empty number"));
    }
    let Some(body) = s.strip_suffix('i') else { return Ok((Some(s), None)) };
    // the imaginary part starts at the last sign that is not leading or after an exponent marker
    let bytes = body.as_bytes();
    let cut = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match cut {
        Some(k) => Ok((Some(&body[..k]), Some(&body[k..]))),
        None => Ok((None, Some(body))),
    }
}

fn imag_text(t: &str) -> &str {
    match t {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    }
}

/// Exact complex literal as an element of `Q(θ_d)`; `i` needs `4 | d`.
pub fn parse_exact_complex(s: &str, d: u32) -> Result<CycloNum> {
    let (re, im) = split_complex(s)?;
    let mut out = CycloNum::zero();
    if let Some(re) = re {
        out = CycloNum::from_rational(parse_rational(re)?);
    }
    if let Some(im) = im {
        let b = parse_rational(imag_text(im))?;
        if !b.is_zero() {
            if !d.is_multiple_of(4) {
                return Err(invalid(format!("{s:?}: the imaginary unit lies in Q(theta_{d}) only when 4 divides d")));
            }
            out = &out + &(&CycloNum::theta_pow(d, d as i64 / 4) * &CycloNum::from_rational(b));
        }
    }
    Ok(out)
}

pub fn parse_float_complex(s: &str) -> Result<Complex64> {
    let (re, im) = split_complex(s)?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| invalid(format!("malformed number {t:?}")));
    let re = re.map(num).transpose()?.unwrap_or(0.0);
    let im = im.map(|t| num(imag_text(t))).transpose()?.unwrap_or(0.0);
    Ok(Complex64::new(re, im))
}

/// `u=RE+IMi,z=RE+IMi` in either order.
pub fn parse_point(s: &str) -> Result<(Complex64, Complex64)> {
    let (mut u, mut z) = (None, None);
    for part in s.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| invalid(format!("expected key=value in {part:?}")))?;
        match k.trim() {
            "u" => u = Some(parse_float_complex(v)?),
            "z" => z = Some(parse_float_complex(v)?),
            other => return Err(invalid(format!("unknown parameter {other:?}"))),
        }
    }
    match (u, z) {
        (Some(u), Some(z)) => Ok((u, z)),
        _ => Err(invalid("numeric point needs both u and z")),
    }
}

pub fn parse_solution(sel: &str, d: u32) -> Result<Selection> {
    let sel = sel.trim();
    let kind = match sel {
        "roots-of-unity" => Some(Family::RootsOfUnity),
        "uniform" => Some(Family::Uniform),
        _ => None,
    };
    if let Some(kind) = kind {
        let sol = family(&kind, d)?;
        return Ok(Selection { trace: sol.trace_params()?, solution: Some(sol) });
    }
    if let Some(list) = sel.strip_prefix("subset:") {
        let s = list
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| invalid(format!("bad subset element {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let sol = family(&Family::Subset(s), d)?;
        return Ok(Selection { trace: sol.trace_params()?, solution: Some(sol) });
    }
    if let Some(list) = sel.strip_prefix("custom:") {
        let xs = list
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| parse_exact_complex(t, d))
            .collect::<Result<Vec<_>>>()?;
        let trace = TraceParams::new(d, xs.clone())?;
        let solution = match ESolution::exact(d, xs, Origin::Custom) {
            Ok(sol) => Some(sol),
            Err(Error::NotESolution) | Err(Error::ZeroZeta) => None,
            Err(e) => return Err(e),
        };
        return Ok(Selection { trace, solution });
    }
    Err(invalid(format!("unknown solution selector {sel:?}")))
}

fn parse_word(args: &BraidArgs) -> Result<SingularBraidWord> {
    parse_braid(&args.braid, args.strands)
}

fn format_float(x: f64) -> String {
    let s = format!("{:.12}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

pub fn format_complex(c: Complex64) -> String {
    let eps = 1e-12;
    match (c.re.abs() < eps, c.im.abs() < eps) {
        (_, true) => format_float(c.re),
        (true, false) => format!("{}i", format_float(c.im)),
        (false, false) => {
            let sign = if c.im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", format_float(c.re), format_float(c.im.abs()))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SingularPoint | Error::ZeroDivisor => 3,
        _ => 2,
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    invalid(format!("output error: {e}"))
}

pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Delta(a) => cmd_delta(a, out),
        Command::Trace(a) => cmd_trace(a, out),
        Command::Esolve(a) => cmd_esolve(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
    }
}

fn cmd_delta(a: &BraidArgs, out: &mut dyn Write) -> Result<i32> {
    let w = parse_word(a)?;
    let sel = parse_solution(&a.solution, a.d)?;
    let params = sel.delta_params()?;
    let point = a.numeric.as_deref().map(parse_point).transpose()?;
    let value = DeltaEvaluator::new(params).delta(&w)?;
    let numeric = point.map(|(u0, z0)| value.f().eval(u0, z0, a.d)).transpose()?;
    if a.json {
        let mut obj = json!({
            "n": w.strands(),
            "exponent": w.exponent(),
            "half_lambda": value.half(),
            "value": value.f().to_string(),
        });
        if let Some(c) = numeric {
            obj["numeric"] = json!({ "re": c.re, "im": c.im });
        }
        writeln!(out, "{obj}").map_err(io)?;
    } else {
        writeln!(out, "{value}").map_err(io)?;
        if let Some(c) = numeric {
            let text = format_complex(c);
            if value.half() == 0 {
                writeln!(out, "{text}").map_err(io)?;
            } else if text[1..].contains(['+', '-']) {
                writeln!(out, "({text}) * sqrt(lambda)").map_err(io)?;
            } else {
                writeln!(out, "{text} * sqrt(lambda)").map_err(io)?;
            }
        }
    }
    Ok(0)
}

fn cmd_trace(a: &BraidArgs, out: &mut dyn Write) -> Result<i32> {
    let w = parse_word(a)?;
    let sel = parse_solution(&a.solution, a.d)?;
    let point = a.numeric.as_deref().map(parse_point).transpose()?;
    let x = delta_map(&w, a.d)?;
    let t = Tracer::new(sel.trace).trace(&x)?;
    let numeric = point.map(|(u0, z0)| t.eval(u0, z0, a.d)).transpose()?;
    if a.json {
        let mut obj = json!({ "n": w.strands(), "exponent": w.exponent(), "value": t.to_string() });
        if let Some(c) = numeric {
            obj["numeric"] = json!({ "re": c.re, "im": c.im });
        }
        writeln!(out, "{obj}").map_err(io)?;
    } else {
        writeln!(out, "{t}").map_err(io)?;
        if let Some(c) = numeric {
            writeln!(out, "{}", format_complex(c)).map_err(io)?;
        }
    }
    Ok(0)
}

fn cmd_esolve(a: &EsolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    let sols = solve_numeric(a.d, a.attempts, a.seed, a.tol)?;
    let _ = writeln!(err, "esolve: {} solutions from {} starts in {:.2?}", sols.len(), a.attempts, start.elapsed());
    if a.json {
        let list: Vec<_> = sols
            .iter()
            .map(|s| {
                let xs: Vec<_> = s.complex_xs().iter().map(|c| json!({ "re": c.re, "im": c.im })).collect();
                let z = s.complex_zeta();
                json!({ "xs": xs, "zeta": { "re": z.re, "im": z.im }, "residual": s.residual() })
            })
            .collect();
        writeln!(out, "{}", json!(list)).map_err(io)?;
        return Ok(0);
    }
    for s in &sols {
        let xs: Vec<String> = s.complex_xs().into_iter().map(format_complex).collect();
        writeln!(
            out,
            "({})  zeta = {}  residual = {:.1e}",
            xs.join(", "),
            format_complex(s.complex_zeta()),
            s.residual()
        )
        .map_err(io)?;
    }
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let suite: Suite = a.suite.parse()?;
    let start = Instant::now();
    let report: Report = match suite {
        Suite::Relations => {
            let mut r = Report::new();
            for n in 2..=4 {
                r.merge(relations(a.d, n)?);
            }
            r
        }
        Suite::Trace => {
            let sel = parse_solution(&a.solution, a.d)?;
            let cfg = TraceConfig { samples: a.samples.unwrap_or(30), max_strands: 4, seed: a.seed };
            trace_properties(&sel.trace, &cfg)?
        }
        Suite::Markov | Suite::Skein => {
            let sel = parse_solution(&a.solution, a.d)?;
            if sel.solution.is_none() {
                let _ = writeln!(err, "warning: parameters do not satisfy the E-condition");
            }
            let params = sel.delta_params_any()?;
            let cfg = WordConfig { samples: a.samples.unwrap_or(20), seed: a.seed, ..WordConfig::default() };
            if suite == Suite::Markov {
                markov_orbits(&params, &cfg)?
            } else {
                skein_sweep(&params, &cfg)?
            }
        }
    };
    let _ = writeln!(err, "verify {suite}: finished in {:.2?}", start.elapsed());
    writeln!(out, "suite {suite} (d={}, solution {})", a.d, a.solution).map_err(io)?;
    write!(out, "{report}").map_err(io)?;
    writeln!(out, "total: pass {} fail {}", report.passed(), report.failed()).map_err(io)?;
    Ok(if report.ok() { 0 } else { 1 })
}
