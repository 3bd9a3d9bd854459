//! Verification suites. Each suite checks one stated property of the
//! library on a small grid and returns one [`Check`] per comparison.

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use qlp_core::archimedean::{partial_zeta_h, q_l_continued, q_l_direct, q_l_hurwitz, SeriesBudget};
use qlp_core::domain::{v_qpow_minus_one, v_ratio_minus_one};
use qlp_core::padic::{padic_exp, padic_log, padic_pow_s, teichmuller};
use qlp_core::padic_l::{dlds_at_0, h_pq, l_pq, interpolation_formula, derivative_stated_form};
use qlp_core::qbernoulli::{
    binomial_row, generalized_qbernoulli, padic_headroom, qbernoulli_numbers, qbernoulli_poly, QBernoulliCache,
};
use qlp_core::volkenborn::volkenborn_moment;
use qlp_core::{
    twist, ComplexDomain, DirichletCharacter, Error, LpContext, PadicDomain, PadicNumber, PrecisionPolicy, QParam,
    SJet, ValueDomain,
};

use crate::exact::bernoulli_numbers;
use crate::job::{JobError, JobSpec};
use crate::parse::{parse_character, parse_decimal, parse_ratio, Ratio};
use crate::report::{Check, Discrepancy};

/// Suite names are stable identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// log_p(xy) = log_p x + log_p y
    LogHomomorphism,
    /// exp(log x) = x and log(exp x) = x
    ExpLog,
    /// omega(a)^(p-1) = 1
    TeichmullerRoots,
    /// omega(ab) = omega(a) omega(b)
    TeichmullerMultiplicative,
    /// d/ds u^s = log(u) u^s through jets
    JetChain,
    /// higher working precision truncates to the same result
    PrecisionSoundness,
    /// chi(ab) = chi(a) chi(b) in both domains
    CharacterMultiplicative,
    /// chi(a)^m = 1 in Q_p
    CharacterRoots,
    /// complex and p-adic values follow the same exponent table
    EmbeddingConsistency,
    /// chi_n depends on n mod p - 1
    TwistPeriodicity,
    /// binomial and distribution forms of B_{n,q,chi}(x) agree
    Distribution,
    /// q^h sum C(n,k) B_k - B_n = [n = 1]
    RecursionResidual,
    /// h = 0 gives the classical Bernoulli numbers
    H0Collapse,
    /// Volkenborn partial sums approach B_{n,q}
    Volkenborn,
    /// cached numbers equal fresh ones
    CacheTransparency,
    /// complex L is the chi-weighted sum of partial zeta functions
    PartialZetaDecomposition,
    /// continuation and Dirichlet series agree for Re s > 1
    Overlap,
    /// continuation at 1 - k equals -B_{k,q,chi}(x)/k
    #[value(alias = "proposition2")]
    SpecialValues,
    /// (s - 1) L(s) tends to its residue along the real axis
    Pole,
    /// continuation at 1 - k does not depend on the term cap
    ContinuationTermination,
    /// L_p(1 - n, t) from the interpolation formula
    #[value(alias = "theorem3")]
    Interpolation,
    /// L_p is the weighted sum of its partial functions
    LpDecomposition,
    /// L_p at nonpositive integers does not depend on the series cap
    LpTermination,
    /// jet derivative matches difference quotients
    JetConsistency,
    /// derivative at 0 equals the stated closed form
    #[value(alias = "theorem4")]
    DerivativeFormula,
    /// L_p(s) and L_p(s + p^N) agree to about N digits
    Analyticity,
}

struct Params {
    p: u64,
    q: Ratio,
    h: i64,
    prec: i64,
    n_max: usize,
    chi: Option<DirichletCharacter>,
    complex_q: f64,
}

impl Params {
    fn from_spec(spec: &JobSpec) -> Result<Self, JobError> {
        let p = spec.p.unwrap_or(5);
        qlp_core::padic::check_odd_prime(p)?;
        let padic_q = match &spec.q {
            Some(t) if t.contains('.') => None,
            Some(t) => Some(parse_ratio("q", t)?),
            None => None,
        };
        let q = padic_q.unwrap_or(Ratio::integer(1 + p as i64));
        let complex_q = match &spec.q {
            Some(t) if t.contains('.') => parse_decimal("q", t)?,
            _ => 0.5,
        };
        if let Some(v) = v_ratio_minus_one(p, q.num, q.den) {
            if v < 1 {
                return Err(JobError::usage(format!("q = {}/{} is not in the disk around 1", q.num, q.den)));
            }
        }
        let chi = spec.chi.as_deref().map(|c| parse_character(Some(c))).transpose()?;
        Ok(Params {
            p,
            q,
            h: spec.h,
            prec: spec.prec,
            n_max: spec.n_max.unwrap_or(5).max(1),
            chi,
            complex_q,
        })
    }

    fn policy(&self) -> PrecisionPolicy {
        PrecisionPolicy::with_target(self.prec)
    }

    fn padic(&self, num: i64, den: i64, prec: i64) -> Result<PadicNumber, Error> {
        PadicNumber::from_rational_prec(self.p, &BigInt::from(num), &BigInt::from(den), prec as u32)
    }

    /// Characters for the p-adic suites: the requested one, else trivial,
    /// quadratic mod 4 and the Legendre symbol mod p.
    fn padic_characters(&self) -> Vec<DirichletCharacter> {
        match &self.chi {
            Some(c) => vec![c.clone()],
            None => vec![
                DirichletCharacter::trivial(),
                DirichletCharacter::from_generators(4, &[(3, 1)], 2).expect("valid"),
                DirichletCharacter::legendre(self.p).expect("odd prime"),
            ],
        }
    }

    /// Characters for the complex suites: the requested one, else
    /// conductors 1, 4 and 5.
    fn complex_characters(&self) -> Vec<DirichletCharacter> {
        match &self.chi {
            Some(c) => vec![c.clone()],
            None => vec![
                DirichletCharacter::trivial(),
                DirichletCharacter::from_generators(4, &[(3, 1)], 2).expect("valid"),
                DirichletCharacter::mod_prime(5, 4, 1).expect("valid"),
            ],
        }
    }

    fn context(&self, chi: &DirichletCharacter) -> Result<LpContext, Error> {
        let big_f = num_integer::lcm(self.p, chi.modulus());
        LpContext::new(self.p, self.q.num, self.q.den, self.h, chi.clone(), big_f, self.policy())
    }
}

fn padic_check(identity: &str, parameters: serde_json::Value, lhs: &PadicNumber, rhs: &PadicNumber, need: i64) -> Check {
    let v = (lhs - rhs).valuation_lower_bound();
    Check {
        identity: identity.to_string(),
        parameters,
        lhs: lhs.into(),
        rhs: rhs.into(),
        error: Discrepancy::ErrorValuation(v),
        pass: v >= need,
    }
}

fn complex_check(identity: &str, parameters: serde_json::Value, lhs: Complex64, rhs: Complex64, tol: f64) -> Check {
    let e = (lhs - rhs).norm();
    Check {
        identity: identity.to_string(),
        parameters,
        lhs: lhs.into(),
        rhs: rhs.into(),
        error: Discrepancy::AbsError(e),
        pass: e < tol,
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn principal_units(p: u64, prec: i64) -> Vec<PadicNumber> {
    [1i64, 2, -3, 7]
        .iter()
        .map(|a| PadicNumber::from_i64(p, 1 + a * p as i64, prec as u32 + 8))
        .collect()
}

pub fn run_suite(suite: Suite, spec: &JobSpec) -> Result<Vec<Check>, JobError> {
    let par = Params::from_spec(spec)?;
    Ok(match suite {
        Suite::LogHomomorphism => log_homomorphism(&par)?,
        Suite::ExpLog => exp_log(&par)?,
        Suite::TeichmullerRoots => teichmuller_roots(&par)?,
        Suite::TeichmullerMultiplicative => teichmuller_multiplicative(&par)?,
        Suite::JetChain => jet_chain(&par)?,
        Suite::PrecisionSoundness => precision_soundness(&par)?,
        Suite::CharacterMultiplicative => character_multiplicative(&par)?,
        Suite::CharacterRoots => character_roots(&par)?,
        Suite::EmbeddingConsistency => embedding_consistency(&par)?,
        Suite::TwistPeriodicity => twist_periodicity(&par)?,
        Suite::Distribution => distribution(&par)?,
        Suite::RecursionResidual => recursion_residual(&par)?,
        Suite::H0Collapse => h0_collapse(&par)?,
        Suite::Volkenborn => volkenborn(&par)?,
        Suite::CacheTransparency => cache_transparency(&par)?,
        Suite::PartialZetaDecomposition => partial_zeta_decomposition(&par)?,
        Suite::Overlap => overlap(&par)?,
        Suite::SpecialValues => special_values(&par)?,
        Suite::Pole => pole(&par)?,
        Suite::ContinuationTermination => continuation_termination(&par)?,
        Suite::Interpolation => interpolation(&par)?,
        Suite::LpDecomposition => lp_decomposition(&par)?,
        Suite::LpTermination => lp_termination(&par)?,
        Suite::JetConsistency => jet_consistency(&par)?,
        Suite::DerivativeFormula => derivative_formula(&par)?,
        Suite::Analyticity => analyticity(&par)?,
    })
}

fn log_homomorphism(par: &Params) -> Result<Vec<Check>, Error> {
    let pol = par.policy();
    let units = principal_units(par.p, par.prec);
    let mut out = Vec::new();
    for (i, x) in units.iter().enumerate() {
        for y in &units[i..] {
            let lhs = padic_log(&(x * y), &pol)?;
            let rhs = &padic_log(x, &pol)? + &padic_log(y, &pol)?;
            out.push(padic_check(
                "log(xy) = log x + log y",
                json!({"x": x.to_string(), "y": y.to_string()}),
                &lhs,
                &rhs,
                par.prec,
            ));
        }
    }
    Ok(out)
}

fn exp_log(par: &Params) -> Result<Vec<Check>, Error> {
    let pol = par.policy();
    let mut out = Vec::new();
    for x in principal_units(par.p, par.prec) {
        let back = padic_exp(&padic_log(&x, &pol.raised(4))?, &pol)?;
        out.push(padic_check("exp(log x) = x", json!({"x": x.to_string()}), &back, &x, par.prec));
        let z = &x - &PadicNumber::one(par.p, par.prec as u32 + 8);
        let again = padic_log(&padic_exp(&z, &pol.raised(4))?, &pol)?;
        out.push(padic_check("log(exp z) = z", json!({"z": z.to_string()}), &again, &z, par.prec));
    }
    Ok(out)
}

fn teichmuller_roots(par: &Params) -> Result<Vec<Check>, Error> {
    let pol = par.policy();
    let one = PadicNumber::one(par.p, par.prec as u32);
    (1..par.p as i64)
        .map(|a| {
            let w = teichmuller(a, par.p, &pol)?;
            Ok(padic_check(
                "omega(a)^(p-1) = 1",
                json!({"a": a}),
                &w.pow(par.p as u32 - 1),
                &one,
                par.prec,
            ))
        })
        .collect()
}

fn teichmuller_multiplicative(par: &Params) -> Result<Vec<Check>, Error> {
    let pol = par.policy();
    let p = par.p as i64;
    let mut out = Vec::new();
    for a in [2i64, 3, 1 + p, 2 * p - 1] {
        for b in [2i64, p - 1, 3 * p + 1] {
            if a % p == 0 || b % p == 0 {
                continue;
            }
            let lhs = teichmuller(a * b, par.p, &pol)?;
            let rhs = &teichmuller(a, par.p, &pol)? * &teichmuller(b, par.p, &pol)?;
            out.push(padic_check("omega(ab) = omega(a) omega(b)", json!({"a": a, "b": b}), &lhs, &rhs, par.prec));
        }
    }
    Ok(out)
}

fn jet_chain(par: &Params) -> Result<Vec<Check>, Error> {
    let pol = par.policy();
    let mut out = Vec::new();
    for u in principal_units(par.p, par.prec + 16) {
        for (num, den) in [(0i64, 1i64), (1, 2), (-3, 1)] {
            let s0 = par.padic(num, den, par.prec + 32)?;
            let jet = SJet::variable(s0.clone(), PadicNumber::one(par.p, par.prec as u32 + 32));
            let r = padic_pow_s(&u, &jet, &pol)?;
            let want = &padic_log(&u, &pol)? * &padic_pow_s(&u, &s0, &pol)?;
            out.push(padic_check(
                "d/ds u^s = log(u) u^s",
                json!({"u": u.to_string(), "s0": format!("{num}/{den}")}),
                &r.der,
                &want,
                par.prec,
            ));
        }
    }
    Ok(out)
}

fn precision_soundness(par: &Params) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    let low = par.policy();
    let high = par.policy().raised(10);
    for u in principal_units(par.p, par.prec + 16) {
        let a = padic_log(&u, &low)?;
        let b = padic_log(&u, &high)?.with_abs_prec(par.prec);
        out.push(padic_check("log at two precisions", json!({"u": u.to_string()}), &a, &b, par.prec));
    }
    let v_den = v_qpow_minus_one(par.p, v_ratio_minus_one(par.p, par.q.num, par.q.den).unwrap_or(1), par.h.max(1));
    let numbers = |extra: i64| -> Result<Vec<PadicNumber>, Error> {
        let d = PadicDomain::new(par.p, par.prec + padic_headroom(par.p, par.n_max, v_den) + extra)?;
        let qp = QParam::new(&d, d.rational(par.q.num, par.q.den)?)?;
        qbernoulli_numbers(par.n_max, &qp, par.h, &d)?
            .into_iter()
            .map(|b| low.deliver(b))
            .collect()
    };
    let base = numbers(0)?;
    let more = numbers(10)?;
    for n in 0..=par.n_max {
        out.push(padic_check(
            "B_n at two working precisions",
            json!({"n": n, "extra_digits": 10}),
            &base[n],
            &more[n],
            par.prec,
        ));
    }
    Ok(out)
}

fn character_multiplicative(par: &Params) -> Result<Vec<Check>, Error> {
    let pol = par.policy();
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        let f = chi.modulus() as i64;
        for a in 1..=f.min(12) {
            for b in [a + 1, 2 * a + 3] {
                let params = json!({"chi": chi.to_string(), "a": a, "b": b});
                out.push(complex_check(
                    "chi(ab) = chi(a) chi(b) in C",
                    params.clone(),
                    chi.eval_complex(a * b),
                    chi.eval_complex(a) * chi.eval_complex(b),
                    1e-12,
                ));
                let lhs = chi.eval_padic(a * b, par.p, &pol)?;
                let rhs = &chi.eval_padic(a, par.p, &pol)? * &chi.eval_padic(b, par.p, &pol)?;
                out.push(padic_check("chi(ab) = chi(a) chi(b) in Q_p", params, &lhs, &rhs, par.prec));
            }
        }
    }
    Ok(out)
}

fn character_roots(par: &Params) -> Result<Vec<Check>, Error> {
    let pol = par.policy();
    let one = PadicNumber::one(par.p, par.prec as u32);
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        for a in 1..=chi.modulus() as i64 {
            if chi.exponent(a).is_none() {
                continue;
            }
            let v = chi.eval_padic(a, par.p, &pol)?.pow(chi.order() as u32);
            out.push(padic_check(
                "chi(a)^m = 1",
                json!({"chi": chi.to_string(), "a": a}),
                &v,
                &one,
                par.prec,
            ));
        }
    }
    Ok(out)
}

fn embedding_consistency(par: &Params) -> Result<Vec<Check>, Error> {
    let pol = par.policy();
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        let zeta = chi.padic_zeta(par.p, &pol)?;
        let m = chi.order() as f64;
        for a in 1..=chi.modulus() as i64 {
            let Some(e) = chi.exponent(a) else { continue };
            let params = json!({"chi": chi.to_string(), "a": a, "e": e});
            let angle = 2.0 * std::f64::consts::PI * e as f64 / m;
            out.push(complex_check(
                "chi(a) = zeta_m^e(a) in C",
                params.clone(),
                chi.eval_complex(a),
                Complex64::from_polar(1.0, angle),
                1e-12,
            ));
            out.push(padic_check(
                "chi(a) = zeta_m^e(a) in Q_p",
                params,
                &chi.eval_padic(a, par.p, &pol)?,
                &zeta.pow(e as u32),
                par.prec,
            ));
        }
    }
    Ok(out)
}

fn twist_periodicity(par: &Params) -> Result<Vec<Check>, Error> {
    let pol = par.policy();
    let period = par.p as i64 - 1;
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        for n in 0..=par.n_max as i64 {
            let a_tw = twist(&chi, n, par.p)?;
            let b_tw = twist(&chi, n + period, par.p)?;
            for a in 1..=a_tw.full().modulus() as i64 {
                out.push(padic_check(
                    "chi_n = chi_{n+p-1}",
                    json!({"chi": chi.to_string(), "n": n, "a": a}),
                    &a_tw.eval_padic(a, &pol)?,
                    &b_tw.eval_padic(a, &pol)?,
                    par.prec,
                ));
            }
        }
    }
    Ok(out)
}

fn distribution(par: &Params) -> Result<Vec<Check>, Error> {
    let p = par.p;
    let n_max = par.n_max.max(8);
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        let f = chi.modulus() as i64;
        let vq = v_ratio_minus_one(p, par.q.num, par.q.den).unwrap_or(1);
        let v_den = v_qpow_minus_one(p, vq, par.h.max(1) * f);
        let d = PadicDomain::new(p, par.prec + padic_headroom(p, n_max, v_den) + 2 * n_max as i64)?;
        let qp = QParam::new(&d, d.rational(par.q.num, par.q.den)?)?;
        let qf = qp.power(&d, f)?;
        let qh = qp.power(&d, par.h)?;
        let chi_vals = d.chi_values(&chi)?;
        let fe = d.from_i64(f);
        let numbers: Vec<PadicNumber> = (0..=n_max)
            .map(|k| generalized_qbernoulli(k, &qp, par.h, &chi, &d.zero(), &d))
            .collect::<Result<_, _>>()?;
        for (xn, xd) in [(0i64, 1i64), (2, 3)] {
            let x = d.rational(xn, xd)?;
            for n in 0..=n_max {
                let params = json!({"chi": chi.to_string(), "n": n, "x": format!("{xn}/{xd}")});
                let direct = generalized_qbernoulli(n, &qp, par.h, &chi, &x, &d)?;
                let row = binomial_row(n);
                let mut binomial = d.zero();
                for k in 0..=n {
                    let t = d.mul(&d.from_big(&row[k]), &d.mul(&numbers[k], &d.pow(&x, (n - k) as u32)));
                    binomial = d.add(&binomial, &t);
                }
                let mut literal = d.zero();
                let mut weight = d.one();
                for (i, cv) in chi_vals.iter().enumerate() {
                    if !cv.is_zero() {
                        let y = d.div(&d.add(&d.from_i64(i as i64), &x), &fe)?;
                        let b = qbernoulli_poly(n, &qf, par.h, &y, &d)?;
                        literal = d.add(&literal, &d.mul(&d.mul(cv, &weight), &b));
                    }
                    weight = d.mul(&weight, &qh.value);
                }
                literal = d.mul(&literal, &d.powi(&fe, n as i64 - 1)?);
                let pol = par.policy();
                let direct = pol.deliver(direct)?;
                out.push(padic_check(
                    "B_{n,q,chi}(x) = sum C(n,k) B_{k,q,chi} x^(n-k)",
                    params.clone(),
                    &direct,
                    &pol.deliver(binomial)?,
                    par.prec - 5,
                ));
                out.push(padic_check(
                    "B_{n,q,chi}(x) = f^(n-1) sum chi(i) q^(hi) B_{n,q^f}((i+x)/f)",
                    params,
                    &direct,
                    &pol.deliver(literal)?,
                    par.prec - 5,
                ));
            }
        }
    }
    Ok(out)
}

fn recursion_residual(par: &Params) -> Result<Vec<Check>, Error> {
    if par.h == 0 {
        return Err(Error::InvalidArgument("the q-recursion needs h != 0"));
    }
    let p = par.p;
    let v_den = v_qpow_minus_one(p, v_ratio_minus_one(p, par.q.num, par.q.den).unwrap_or(1), par.h);
    let d = PadicDomain::new(p, par.prec + padic_headroom(p, par.n_max, v_den) + v_den)?;
    let qp = QParam::new(&d, d.rational(par.q.num, par.q.den)?)?;
    let bs = qbernoulli_numbers(par.n_max, &qp, par.h, &d)?;
    let qh = qp.power(&d, par.h)?;
    let mut out = Vec::new();
    for n in 1..=par.n_max {
        let row = binomial_row(n);
        let mut sum = d.zero();
        for k in 0..=n {
            sum = d.add(&sum, &d.mul(&d.from_big(&row[k]), &bs[k]));
        }
        let lhs = d.sub(&d.mul(&qh.value, &sum), &bs[n]);
        let rhs = if n == 1 { d.one() } else { d.zero() };
        out.push(padic_check("q^h sum_k C(n,k) B_k - B_n = [n = 1]", json!({"n": n}), &lhs, &rhs, par.prec));
    }
    Ok(out)
}

fn h0_collapse(par: &Params) -> Result<Vec<Check>, Error> {
    let p = par.p;
    let exact = bernoulli_numbers(par.n_max.max(8));
    let d = PadicDomain::new(p, par.prec + 2 * par.n_max as i64 + 8)?;
    let mut out = Vec::new();
    for (qn, qd) in [(par.q.num, par.q.den), (1 + (p * p) as i64, 1)] {
        let qp = QParam::new(&d, d.rational(qn, qd)?)?;
        let bs = qbernoulli_numbers(exact.len() - 1, &qp, 0, &d)?;
        for (n, b) in exact.iter().enumerate() {
            let want = PadicNumber::from_rational_prec(p, b.numer(), b.denom(), d.work() as u32)?;
            out.push(padic_check(
                "B_{n,q}^(0) = B_n",
                json!({"n": n, "q": format!("{qn}/{qd}")}),
                &bs[n],
                &want,
                par.prec,
            ));
        }
    }
    Ok(out)
}

fn volkenborn(par: &Params) -> Result<Vec<Check>, Error> {
    let p = par.p;
    let v_den = v_qpow_minus_one(p, v_ratio_minus_one(p, par.q.num, par.q.den).unwrap_or(1), par.h.max(1));
    let d = PadicDomain::new(p, par.prec + padic_headroom(p, 4, v_den))?;
    let qp = QParam::new(&d, d.rational(par.q.num, par.q.den)?)?;
    let bs = qbernoulli_numbers(4.min(par.n_max), &qp, par.h, &d)?;
    let q = par.padic(par.q.num, par.q.den, par.prec)?;
    let top = match p {
        3 => 7,
        5 => 6,
        7 => 5,
        _ => 4,
    };
    let mut out = Vec::new();
    for (n, b) in bs.iter().enumerate() {
        for level in (top - 2)..=top {
            let m = volkenborn_moment(n as u32, &q, par.h, level)?;
            out.push(padic_check(
                "p^-N sum_{x<p^N} q^(hx) x^n -> B_{n,q}",
                json!({"n": n, "N": level}),
                &m,
                b,
                level as i64 - 3,
            ));
        }
    }
    Ok(out)
}

fn cache_transparency(par: &Params) -> Result<Vec<Check>, Error> {
    let p = par.p;
    let d = PadicDomain::new(p, par.prec + padic_headroom(p, par.n_max, 4))?;
    let qp = QParam::new(&d, d.rational(par.q.num, par.q.den)?)?;
    let mut cache = QBernoulliCache::new(qp.clone());
    let mut out = Vec::new();
    for k in [1i64, p as i64] {
        cache.numbers(&d, par.h, k, 1)?;
        let cached = cache.numbers(&d, par.h, k, par.n_max)?.to_vec();
        let fresh = qbernoulli_numbers(par.n_max, &qp.power(&d, k)?, par.h, &d)?;
        for n in 0..=par.n_max {
            let mut ch = padic_check("cached B_n = fresh B_n", json!({"n": n, "k": k}), &cached[n], &fresh[n], 0);
            ch.pass = cached[n] == fresh[n];
            out.push(ch);
        }
    }
    Ok(out)
}

fn partial_zeta_decomposition(par: &Params) -> Result<Vec<Check>, Error> {
    let b = SeriesBudget::default();
    let q = c(par.complex_q);
    let mut out = Vec::new();
    for chi in par.complex_characters() {
        for h in [0i64, 1, 2] {
            for s in [c(2.5), c(3.0), Complex64::new(2.0, 1.5)] {
                let f = chi.modulus();
                let whole = q_l_direct(s, &chi, q, h, &b)?;
                let mut parts = c(0.0);
                for a in 1..=f {
                    let w = chi.eval_complex(a as i64);
                    if w.norm() > 0.0 {
                        parts += w * partial_zeta_h(s, a as f64, f, q, h, &b)?;
                    }
                }
                out.push(complex_check(
                    "L(s) = sum_a chi(a) H(s, a | f)",
                    json!({"chi": chi.to_string(), "h": h, "s": [s.re, s.im]}),
                    whole,
                    parts,
                    1e-9,
                ));
            }
        }
    }
    Ok(out)
}

fn overlap(par: &Params) -> Result<Vec<Check>, Error> {
    let b = SeriesBudget::default();
    let q = c(par.complex_q);
    let mut out = Vec::new();
    for chi in par.complex_characters() {
        for h in [0i64, 1, 2] {
            for x in [0.25, 1.0] {
                for s in [2.5, 3.0, 4.0] {
                    let series = q_l_hurwitz(c(s), x, &chi, q, h, &b)?;
                    let params = json!({"chi": chi.to_string(), "h": h, "x": x, "s": s, "m_max": b.m_max});
                    let cont = match q_l_continued(c(s), x, &chi, q, h, b.m_max) {
                        Ok(v) => v,
                        Err(Error::BudgetExhausted { .. }) => Complex64::new(f64::NAN, f64::NAN),
                        Err(e) => return Err(e),
                    };
                    out.push(complex_check("continued L(s, x) = series L(s, x)", params, cont, series, 1e-6));
                }
            }
        }
    }
    Ok(out)
}

fn special_values(par: &Params) -> Result<Vec<Check>, Error> {
    let d = ComplexDomain;
    let q = c(par.complex_q);
    let qp = QParam::new(&d, q)?;
    let mut out = Vec::new();
    for chi in par.complex_characters() {
        for h in [0i64, 1, 2] {
            for x in [0.25, 1.0] {
                for k in 1..=par.n_max {
                    let cont = q_l_continued(c(1.0 - k as f64), x, &chi, q, h, 60)?;
                    let b = generalized_qbernoulli(k, &qp, h, &chi, &c(x), &d)?;
                    out.push(complex_check(
                        "L(1 - k, x) = -B_{k,q,chi}(x)/k",
                        json!({"chi": chi.to_string(), "h": h, "x": x, "k": k}),
                        cont,
                        -b / k as f64,
                        1e-8,
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn pole(par: &Params) -> Result<Vec<Check>, Error> {
    let b = SeriesBudget::default();
    let q = par.complex_q;
    let mut out = Vec::new();
    for chi in par.complex_characters() {
        let f = chi.modulus() as i64;
        for h in [0i64, 1, 2] {
            let residue = if h == 0 {
                (0..f).map(|a| chi.eval_complex(a)).sum::<Complex64>() / f as f64
            } else {
                let big_q = q.powi(h as i32);
                let sum: Complex64 = (0..f).map(|a| chi.eval_complex(a) * big_q.powi(a as i32)).sum();
                -(h as f64) * q.ln() * sum / (1.0 - big_q.powi(f as i32))
            };
            for k in [4, 5, 6] {
                let delta = 10f64.powi(-k);
                let v = q_l_hurwitz(c(1.0 + delta), 1.0, &chi, c(q), h, &b)? * delta;
                out.push(complex_check(
                    "(s - 1) L(s, 1) -> residue",
                    json!({"chi": chi.to_string(), "h": h, "s_minus_1": delta}),
                    v,
                    residue,
                    100.0 * delta * (1.0 + residue.norm()),
                ));
            }
        }
    }
    Ok(out)
}

fn continuation_termination(par: &Params) -> Result<Vec<Check>, Error> {
    let q = c(par.complex_q);
    let mut out = Vec::new();
    for chi in par.complex_characters() {
        for h in [0i64, 1, 2] {
            for k in 1..=par.n_max {
                let s = c(1.0 - k as f64);
                let tight = q_l_continued(s, 0.5, &chi, q, h, k)?;
                let loose = q_l_continued(s, 0.5, &chi, q, h, 60)?;
                let mut ch = complex_check(
                    "L(1 - k) with cap k = with cap 60",
                    json!({"chi": chi.to_string(), "h": h, "k": k}),
                    tight,
                    loose,
                    0.0,
                );
                ch.pass = tight == loose;
                out.push(ch);
            }
        }
    }
    Ok(out)
}

fn interpolation(par: &Params) -> Result<Vec<Check>, Error> {
    let p = par.p;
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        let ctx = par.context(&chi)?;
        for t in [0i64, 1, 2 * p as i64] {
            let tp = PadicNumber::from_i64(p, t, par.prec as u32 + 64);
            for n in 1..=par.n_max {
                let s = PadicNumber::from_i64(p, 1 - n as i64, par.prec as u32 + 64);
                out.push(padic_check(
                    "L_p(1 - n, t) = -(B_{n,q,chi_n}(pt) - chi_n(p) p^(n-1) B_{n,q^p,chi_n}(t))/n",
                    json!({"chi": chi.to_string(), "h": par.h, "n": n, "t": t}),
                    &l_pq(&s, &tp, &ctx)?,
                    &interpolation_formula(n, &tp, &ctx)?,
                    par.prec - 8,
                ));
            }
        }
    }
    Ok(out)
}

fn lp_decomposition(par: &Params) -> Result<Vec<Check>, Error> {
    let p = par.p;
    let pol = par.policy().raised(20);
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        let ctx = par.context(&chi)?;
        let q = par.padic(par.q.num, par.q.den, par.prec + 64)?;
        let qh = if par.h >= 0 {
            q.pow(par.h as u32)
        } else {
            q.pow(par.h.unsigned_abs() as u32).inv()?
        };
        for (sn, sd) in [(1i64, 2i64), (-2, 3)] {
            let s = par.padic(sn, sd, par.prec + 64)?;
            for t in [0i64, 3] {
                let tp = PadicNumber::from_i64(p, t, par.prec as u32 + 64);
                let whole = l_pq(&s, &tp, &ctx)?;
                let mut sum = PadicNumber::zero(p, par.prec + 64);
                for a in 1..=ctx.big_f() as i64 {
                    if a % p as i64 == 0 {
                        continue;
                    }
                    let w = chi.eval_padic(a, p, &pol)?;
                    if w.is_zero() {
                        continue;
                    }
                    let y = PadicNumber::from_i64(p, a + p as i64 * t, par.prec as u32 + 64);
                    let term = &(&w * &qh.pow(a as u32)) * &h_pq(&s, &y, &ctx)?;
                    sum = &sum + &term;
                }
                out.push(padic_check(
                    "L_p(s, t) = sum_(a,p)=1 chi(a) q^(ha) H_p(s, a + pt)",
                    json!({"chi": chi.to_string(), "s": format!("{sn}/{sd}"), "t": t}),
                    &whole,
                    &sum,
                    par.prec - 2,
                ));
            }
        }
    }
    Ok(out)
}

fn lp_termination(par: &Params) -> Result<Vec<Check>, Error> {
    let p = par.p;
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        let ctx = par.context(&chi)?;
        let t = PadicNumber::zero(p, par.prec + 64);
        for n in 1..=par.n_max {
            let k = 1 - n as i64;
            let exact = l_pq(&PadicNumber::from_i64(p, k, par.prec as u32 + 64), &t, &ctx)?;
            // a nearby non-integer point takes the full series
            let shift = BigInt::from(p).pow(par.prec as u32 + 20);
            let near = PadicNumber::from_bigint(p, &(BigInt::from(k) + shift), par.prec as u32 + 64);
            let full = l_pq(&near, &t, &ctx)?;
            out.push(padic_check(
                "terminating series at 1 - n = full series",
                json!({"chi": chi.to_string(), "n": n}),
                &exact,
                &full,
                par.prec,
            ));
        }
    }
    Ok(out)
}

fn jet_consistency(par: &Params) -> Result<Vec<Check>, Error> {
    let p = par.p;
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        let ctx = par.context(&chi)?;
        let t = PadicNumber::zero(p, par.prec + 64);
        for (sn, sd) in [(0i64, 1i64), (1, 2)] {
            let s0 = par.padic(sn, sd, par.prec + 64)?;
            let jet = SJet::variable(s0.clone(), PadicNumber::one(p, par.prec as u32 + 64));
            let der = l_pq(&jet, &t, &ctx)?.der;
            let base = l_pq(&s0, &t, &ctx)?;
            for k in [2u32, 4, 6] {
                if k as i64 >= par.prec - 2 {
                    continue;
                }
                let eps = (p as i64).pow(k);
                let s1 = &s0 + &PadicNumber::from_i64(p, eps, par.prec as u32 + 64);
                let quotient = (&l_pq(&s1, &t, &ctx)? - &base).div_i64(eps)?;
                out.push(padic_check(
                    "der slot = (L(s0 + eps) - L(s0))/eps",
                    json!({"chi": chi.to_string(), "s0": format!("{sn}/{sd}"), "eps": format!("{p}^{k}")}),
                    &der,
                    &quotient,
                    k as i64 - 2,
                ));
            }
        }
    }
    Ok(out)
}

fn derivative_formula(par: &Params) -> Result<Vec<Check>, Error> {
    let p = par.p;
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        let ctx = par.context(&chi)?;
        for t in [0i64, 1] {
            let tp = PadicNumber::from_i64(p, t, par.prec as u32 + 64);
            out.push(padic_check(
                "dL/ds(0, t) = sum chi_1(a) q^(ha) G((a+pt)/F) - L(0, 0) log F - sum chi_1(a) q^(ha) B_1",
                json!({"chi": chi.to_string(), "h": par.h, "t": t, "F": ctx.big_f()}),
                &dlds_at_0(&tp, &ctx)?,
                &derivative_stated_form(&tp, &ctx)?,
                par.prec - 8,
            ));
        }
    }
    Ok(out)
}

fn analyticity(par: &Params) -> Result<Vec<Check>, Error> {
    let p = par.p;
    let mut out = Vec::new();
    for chi in par.padic_characters() {
        let ctx = par.context(&chi)?;
        let s = par.padic(2, 3, par.prec + 64)?;
        let t = PadicNumber::from_i64(p, 1, par.prec as u32 + 64);
        let base = l_pq(&s, &t, &ctx)?;
        for n in [2u32, 4, 6] {
            if n as i64 >= par.prec {
                continue;
            }
            let shifted = &s + &PadicNumber::from_bigint(p, &BigInt::from(p).pow(n), par.prec as u32 + 64);
            out.push(padic_check(
                "L_p(s + p^N) = L_p(s) mod p^(N - 2)",
                json!({"chi": chi.to_string(), "N": n}),
                &l_pq(&shifted, &t, &ctx)?,
                &base,
                n as i64 - 2,
            ));
        }
    }
    Ok(out)
}
