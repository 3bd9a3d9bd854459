//! Job description and dispatch.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;

use qlp_core::archimedean::{q_hurwitz_zeta, q_l_continued, q_l_direct, q_l_hurwitz, SeriesBudget};
use qlp_core::domain::{v_qpow_minus_one, v_ratio_minus_one};
use qlp_core::gamma::diamond_log_gamma_q;
use qlp_core::padic::vp_i64;
use qlp_core::padic_l::{derivative_closed_form, dlds_at_0, l_pq, interpolation_formula};
use qlp_core::qbernoulli::{generalized_qbernoulli, padic_headroom, qbernoulli_poly};
use qlp_core::{
    ComplexDomain, DirichletCharacter, Error, LpContext, PadicDomain, PadicNumber, PrecisionPolicy, QParam, QSource,
};

use crate::exact::classical_bernoulli_poly;
use crate::parse::{parse_character, parse_decimal, parse_ratio, Ratio};
use crate::report::{Metadata, Report, Value, SCHEMA_VERSION};
use crate::verify::{run_suite, Suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// q-Bernoulli number or polynomial
    Qbern,
    /// generalized q-Bernoulli number or polynomial
    GenQbern,
    /// complex q-Hurwitz zeta function
    Zeta,
    /// complex q-L-function
    Lfun,
    /// p-adic q-L-function
    Lp,
    /// s-derivative of the p-adic q-L-function at 0
    Dlp,
    /// q-deformed Diamond log-gamma function
    GammaQ,
    /// run a verification suite
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Qbern => "qbern",
            Command::GenQbern => "gen-qbern",
            Command::Zeta => "zeta",
            Command::Lfun => "lfun",
            Command::Lp => "lp",
            Command::Dlp => "dlp",
            Command::GammaQ => "gamma-q",
            Command::Verify => "verify",
        }
    }
}

/// How `lfun` evaluates the complex q-L-function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum LMethod {
    /// Dirichlet series `sum_{n>=1}`
    Direct,
    /// Hurwitz-type series `sum_{n>=0}` at shift `x`
    Hurwitz,
    /// binomial continuation series at shift `x`
    Continued,
}

/// Everything a job needs; unset fields take per-command defaults.
#[derive(Debug, Clone, Serialize)]
pub struct JobSpec {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub h: i64,
    pub prec: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub big_f: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<LMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            p: None,
            q: None,
            h: 1,
            prec: 20,
            chi: None,
            big_f: None,
            n: None,
            n_max: None,
            s: None,
            s_im: None,
            t: None,
            x: None,
            method: None,
            m_max: None,
            suite: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum JobError {
    /// The spec itself is malformed or incomplete.
    Usage(String),
    /// A computation rejected its inputs or could not reach the precision.
    Core(Error),
}

impl JobError {
    pub fn usage(msg: String) -> Self {
        JobError::Usage(msg)
    }

    /// 1 for a violated precondition, 2 when the requested precision
    /// cannot be delivered.
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Core(Error::PrecisionUnderflow { .. } | Error::BudgetExhausted { .. }) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "precision",
            _ => "precondition",
        }
    }
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JobError::Usage(m) => f.write_str(m),
            JobError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for JobError {}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        JobError::Core(e)
    }
}

/// A computed value, with an independently computed reference when one
/// exists.
#[derive(Debug, Clone)]
pub struct Computed {
    pub value: Value,
    pub exact: Option<String>,
    pub reference: Option<Value>,
}

impl Computed {
    fn plain(value: Value) -> Self {
        Computed {
            value,
            exact: None,
            reference: None,
        }
    }
}

fn require<T: Clone>(v: &Option<T>, name: &str, cmd: Command) -> Result<T, JobError> {
    v.clone()
        .ok_or_else(|| JobError::usage(format!("{}: --{name} is required", cmd.name())))
}

fn check_prec(spec: &JobSpec) -> Result<(), JobError> {
    if spec.prec < 1 || spec.prec > 2000 {
        return Err(JobError::usage(format!("prec must lie in 1..=2000, got {}", spec.prec)));
    }
    Ok(())
}

/// `q` for a p-adic job: an exact rational in the disk around 1.
fn padic_q(spec: &JobSpec, p: u64) -> Result<Ratio, JobError> {
    let q = match &spec.q {
        Some(t) => parse_ratio("q", t)?,
        None => Ratio::integer(1 + p as i64),
    };
    match v_ratio_minus_one(p, q.num, q.den) {
        Some(v) if v < 1 => Err(JobError::usage(format!(
            "q = {}/{} violates |q - 1|_p < p^(-1/(p-1)) (v_p(q - 1) = {v})",
            q.num, q.den
        ))),
        None if spec.h != 0 => Err(JobError::usage("q = 1 requires h = 0".to_string())),
        _ => Ok(q),
    }
}

fn complex_q(spec: &JobSpec) -> Result<Complex64, JobError> {
    let q = match &spec.q {
        Some(t) => parse_decimal("q", t)?,
        None if spec.h == 0 => 0.5,
        None => return Err(JobError::usage(format!("{}: --q is required", spec.command.name()))),
    };
    if !(q > 0.0 && q < 1.0) {
        return Err(JobError::usage(format!("complex jobs need 0 < q < 1, got {q}")));
    }
    Ok(Complex64::new(q, 0.0))
}

fn complex_s(spec: &JobSpec) -> Result<Complex64, JobError> {
    let re = parse_decimal("s", &require(&spec.s, "s", spec.command)?)?;
    Ok(Complex64::new(re, spec.s_im.unwrap_or(0.0)))
}

fn padic_ratio(p: u64, r: Ratio, prec: u32) -> Result<PadicNumber, JobError> {
    Ok(PadicNumber::from_rational_prec(
        p,
        &BigInt::from(r.num),
        &BigInt::from(r.den),
        prec,
    )?)
}

fn budget(spec: &JobSpec) -> SeriesBudget {
    let mut b = SeriesBudget::default();
    if let Some(m) = spec.m_max {
        b.m_max = m.max(1);
    }
    b
}

fn bernoulli_job(spec: &JobSpec, chi: Option<&DirichletCharacter>) -> Result<Computed, JobError> {
    let n = require(&spec.n, "n", spec.command)?;
    let h = spec.h;
    let f = chi.map_or(1, |c| c.modulus() as i64);
    if let Some(p) = spec.p {
        let q = padic_q(spec, p)?;
        let x = match &spec.x {
            Some(t) => parse_ratio("x", t)?,
            None => Ratio::integer(0),
        };
        let v_den = match (h, v_ratio_minus_one(p, q.num, q.den)) {
            (0, _) | (_, None) => 0,
            (h, Some(v)) => v_qpow_minus_one(p, v, h * f),
        };
        let vx = if x.num == 0 { 0 } else { vp_i64(p, x.den) as i64 - vp_i64(p, x.num) as i64 };
        let work = spec.prec + padic_headroom(p, n, v_den) + (n as i64) * (vp_i64(p, f) as i64 + vx.max(0)) + 8;
        let d = PadicDomain::new(p, work)?;
        let qp = QParam::new(&d, d.rational(q.num, q.den)?)?;
        let xp = padic_ratio(p, x, work as u32 + 8)?;
        let raw = match chi {
            None => qbernoulli_poly(n, &qp, h, &xp, &d)?,
            Some(c) => generalized_qbernoulli(n, &qp, h, c, &xp, &d)?,
        };
        let value = PrecisionPolicy::with_target(spec.prec).deliver(raw)?;
        let exact = match (h, chi) {
            (0, None) => Some(classical_bernoulli_poly(n, x.num, x.den)),
            _ => None,
        };
        return Ok(Computed {
            value: (&value).into(),
            exact,
            reference: None,
        });
    }
    let d = ComplexDomain;
    let q = complex_q(spec)?;
    let x = match &spec.x {
        Some(t) => parse_decimal("x", t)?,
        None => 0.0,
    };
    let qp = QParam::new(&d, q)?;
    let xc = Complex64::new(x, 0.0);
    let value = match chi {
        None => qbernoulli_poly(n, &qp, h, &xc, &d)?,
        Some(c) => generalized_qbernoulli(n, &qp, h, c, &xc, &d)?,
    };
    let exact = match (h, chi, &spec.x) {
        (0, None, None) => Some(classical_bernoulli_poly(n, 0, 1)),
        (0, None, Some(t)) => parse_ratio("x", t).ok().map(|r| classical_bernoulli_poly(n, r.num, r.den)),
        _ => None,
    };
    Ok(Computed {
        value: value.into(),
        exact,
        reference: None,
    })
}

fn lp_context(spec: &JobSpec) -> Result<(LpContext, u64), JobError> {
    let p = require(&spec.p, "p", spec.command)?;
    let q = padic_q(spec, p)?;
    let chi = parse_character(spec.chi.as_deref())?;
    let big_f = spec.big_f.unwrap_or_else(|| num_integer::lcm(p, chi.modulus()));
    let ctx = LpContext::new(p, q.num, q.den, spec.h, chi, big_f, PrecisionPolicy::with_target(spec.prec))?;
    Ok((ctx, p))
}

fn padic_param(spec: &JobSpec, text: &Option<String>, name: &str, p: u64, default: i64) -> Result<PadicNumber, JobError> {
    let r = match text {
        Some(t) => parse_ratio(name, t)?,
        None => Ratio::integer(default),
    };
    padic_ratio(p, r, (spec.prec + 64) as u32)
}

/// Computes the value a non-verify job asks for.
pub fn compute(spec: &JobSpec) -> Result<Computed, JobError> {
    check_prec(spec)?;
    match spec.command {
        Command::Qbern => bernoulli_job(spec, None),
        Command::GenQbern => {
            let chi = parse_character(spec.chi.as_deref())?;
            bernoulli_job(spec, Some(&chi))
        }
        Command::Zeta => {
            let s = complex_s(spec)?;
            let x = spec.x.as_deref().map_or(Ok(1.0), |t| parse_decimal("x", t))?;
            if !(x > 0.0) {
                return Err(JobError::usage("zeta needs x > 0".to_string()));
            }
            let v = q_hurwitz_zeta(s, x, complex_q(spec)?, spec.h, &budget(spec))?;
            Ok(Computed::plain(v.into()))
        }
        Command::Lfun => {
            let s = complex_s(spec)?;
            let q = complex_q(spec)?;
            let chi = parse_character(spec.chi.as_deref())?;
            let b = budget(spec);
            let x = spec.x.as_deref().map(|t| parse_decimal("x", t)).transpose()?;
            let method = spec.method.unwrap_or(if x.is_some() { LMethod::Hurwitz } else { LMethod::Direct });
            match method {
                LMethod::Direct => Ok(Computed::plain(q_l_direct(s, &chi, q, spec.h, &b)?.into())),
                LMethod::Hurwitz => {
                    let x = x.unwrap_or(1.0);
                    Ok(Computed::plain(q_l_hurwitz(s, x, &chi, q, spec.h, &b)?.into()))
                }
                LMethod::Continued => {
                    let x = x.unwrap_or(1.0);
                    let value = q_l_continued(s, x, &chi, q, spec.h, b.m_max)?;
                    let reference = q_l_hurwitz(s, x, &chi, q, spec.h, &b).ok().map(Value::from);
                    Ok(Computed {
                        value: value.into(),
                        exact: None,
                        reference,
                    })
                }
            }
        }
        Command::Lp => {
            let (ctx, p) = lp_context(spec)?;
            let s = padic_param(spec, &spec.s, "s", p, 0)?;
            let t = padic_param(spec, &spec.t, "t", p, 0)?;
            let value = l_pq(&s, &t, &ctx)?;
            let reference = match s.to_small_integer() {
                Some(k) if k <= 0 => Some((&interpolation_formula((1 - k) as usize, &t, &ctx)?).into()),
                _ => None,
            };
            Ok(Computed {
                value: (&value).into(),
                exact: None,
                reference,
            })
        }
        Command::Dlp => {
            let (ctx, p) = lp_context(spec)?;
            let t = padic_param(spec, &spec.t, "t", p, 0)?;
            let value = dlds_at_0(&t, &ctx)?;
            let reference = derivative_closed_form(&t, &ctx)?;
            Ok(Computed {
                value: (&value).into(),
                exact: None,
                reference: Some((&reference).into()),
            })
        }
        Command::GammaQ => {
            let p = require(&spec.p, "p", spec.command)?;
            let q = padic_q(spec, p)?;
            let x = parse_ratio("x", &require(&spec.x, "x", spec.command)?)?;
            let xp = padic_ratio(p, x, (spec.prec + 64) as u32)?;
            let qs = QSource::Rational { num: q.num, den: q.den };
            let v = diamond_log_gamma_q(&xp, &qs, spec.h, &PrecisionPolicy::with_target(spec.prec))?;
            Ok(Computed::plain((&v).into()))
        }
        Command::Verify => Err(JobError::usage("verify has no single result".to_string())),
    }
}

/// Runs a job and assembles its report. Verification failures are reported
/// in the `checks` list, not as errors.
pub fn run(spec: &JobSpec) -> Result<Report, JobError> {
    let start = Instant::now();
    let inputs = serde_json::to_value(spec).expect("spec serializes");
    let (result, exact, checks) = if spec.command == Command::Verify {
        check_prec(spec)?;
        let suite = require(&spec.suite, "suite", spec.command)?;
        (None, None, Some(run_suite(suite, spec)?))
    } else {
        let c = compute(spec)?;
        (Some(c.value), c.exact, None)
    };
    Ok(Report {
        schema: SCHEMA_VERSION,
        command: spec.command.name().to_string(),
        inputs,
        result,
        exact,
        checks,
        metadata: Metadata {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}
