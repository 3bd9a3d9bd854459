//! The p-adic function
//! `L_{p,q}^{(h)}(s, t | chi) = 1/((s-1) F) sum_{(a,p)=1} chi(a) q^{ha}
//! <a+pt>^{1-s} sum_m C(1-s, m) (F/(a+pt))^m B_{m,q^F}^{(h)}`,
//! its partial zeta pieces, its special values and its `s`-derivative at 0.

use alloc::vec::Vec;

use num_integer::Integer;

use crate::character::{twist, DirichletCharacter};
use crate::domain::{v_qpow_minus_one, PadicDomain, QParam, QSource, ValueDomain};
use crate::error::{Error, Result};
use crate::gamma::{diamond_log_gamma_q_from, gamma_terms};
use crate::jet::SJet;
use crate::padic::{
    check_odd_prime, iwasawa_log, padic_pow_s, teichmuller, vp_factorial, vp_i64, PadicNumber, PadicScalar,
    PrecisionPolicy,
};
use crate::qbernoulli::{generalized_qbernoulli, qbernoulli_numbers};

/// Extra digits carried on top of every estimate.
const GUARD: i64 = 8;

/// Everything `L_{p,q}^{(h)}` depends on besides `s` and `t`.
#[derive(Debug, Clone)]
pub struct LpContext {
    prime: u64,
    q: QSource,
    h: i64,
    chi: DirichletCharacter,
    big_f: u64,
    policy: PrecisionPolicy,
    v_q1: Option<i64>,
}

impl LpContext {
    /// `q = num/den`.
    pub fn new(
        prime: u64,
        q_num: i64,
        q_den: i64,
        h: i64,
        chi: DirichletCharacter,
        big_f: u64,
        policy: PrecisionPolicy,
    ) -> Result<Self> {
        check_odd_prime(prime)?;
        let q = QSource::Rational { num: q_num, den: q_den };
        let v_q1 = q.v_minus_one(prime)?;
        Self::build(prime, q, v_q1, h, chi, big_f, policy)
    }

    /// `q` given as a p-adic number; results are limited by its precision.
    pub fn with_padic_q(
        q: PadicNumber,
        h: i64,
        chi: DirichletCharacter,
        big_f: u64,
        policy: PrecisionPolicy,
    ) -> Result<Self> {
        let prime = q.prime();
        check_odd_prime(prime)?;
        let q = QSource::Fixed(q);
        let v_q1 = q.v_minus_one(prime)?;
        Self::build(prime, q, v_q1, h, chi, big_f, policy)
    }

    fn build(
        prime: u64,
        q: QSource,
        v_q1: Option<i64>,
        h: i64,
        chi: DirichletCharacter,
        big_f: u64,
        policy: PrecisionPolicy,
    ) -> Result<Self> {
        if !(prime - 1).is_multiple_of(chi.order()) {
            return Err(Error::UnsupportedCharacter("order does not divide p - 1"));
        }
        if big_f == 0 || !big_f.is_multiple_of(prime) || !big_f.is_multiple_of(chi.modulus()) {
            return Err(Error::InvalidArgument("F must be a positive multiple of p and of f"));
        }
        match v_q1 {
            Some(v) if v < 1 => return Err(Error::InvalidQ("need |q - 1|_p < p^(-1/(p-1))")),
            None if h != 0 => return Err(Error::InvalidQ("q = 1 needs h = 0")),
            _ => {}
        }
        Ok(LpContext {
            prime,
            q,
            h,
            chi,
            big_f,
            policy,
            v_q1,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn big_f(&self) -> u64 {
        self.big_f
    }

    pub fn policy(&self) -> &PrecisionPolicy {
        &self.policy
    }

    pub fn q_source(&self) -> &QSource {
        &self.q
    }

    fn target(&self) -> i64 {
        self.policy.target_abs_prec
    }

    fn v_big_f(&self) -> i64 {
        vp_i64(self.prime, self.big_f as i64) as i64
    }

    /// `v_p(q^{hk} - 1)`, zero when no division by it happens (`h = 0`).
    fn v_den(&self, k: i64) -> i64 {
        match (self.h, self.v_q1) {
            (0, _) | (_, None) => 0,
            (h, Some(v)) => v_qpow_minus_one(self.prime, v, h * k),
        }
    }

    /// `q` to `work` digits.
    pub fn q_at(&self, work: i64) -> Result<PadicNumber> {
        self.q.at(self.prime, work)
    }

    /// Number of inner-series terms after which every further term is below
    /// `p^{target + GUARD}` once divided by `(s-1) F`.
    fn series_terms(&self, v_s1: i64) -> usize {
        let vf = self.v_big_f();
        let p = self.prime as i64;
        let need = self.target() + GUARD + v_s1 + vf;
        let mut m: i64 = 1;
        // term_m has valuation >= m vF - v(m!) - 1 with v(m!) <= (m-1)/(p-1)
        while m * vf - (m - 1) / (p - 1) - 1 < need {
            m += 1;
        }
        (m - 1) as usize
    }

    /// Working precision for an inner series of `m_top + 1` terms, with
    /// `extra` digits of cancellation expected in the result.
    fn work_for(&self, m_top: usize, extra: i64) -> i64 {
        let p = self.prime;
        self.target()
            + GUARD
            + extra
            + (m_top as i64 + 2) * self.v_den(self.big_f as i64)
            + 2 * vp_factorial(p, m_top as u64 + 1) as i64
    }

    fn deliver<S: PadicScalar>(&self, x: S) -> Result<S> {
        let have = x.abs_prec();
        if have < self.target() {
            return Err(Error::PrecisionUnderflow {
                have,
                need: self.target(),
            });
        }
        Ok(x.with_abs_prec(self.target()))
    }

    fn deliver_num(&self, x: PadicNumber) -> Result<PadicNumber> {
        self.policy.deliver(x)
    }

    fn embed_t(&self, t: &PadicNumber, work: i64) -> Result<PadicNumber> {
        if t.prime() != self.prime {
            return Err(Error::PrimeMismatch {
                left: t.prime(),
                right: self.prime,
            });
        }
        if !t.is_zero() && t.valuation_lower_bound() < 0 {
            return Err(Error::Domain("t must satisfy |t|_p <= 1"));
        }
        Ok(match t.to_small_integer() {
            Some(k) => PadicNumber::from_i64(self.prime, k, work as u32),
            None => t.clone(),
        })
    }
}

/// Re-embeds an exactly known integer `s` at the working precision.
fn embed_s<S: PadicScalar>(s: &S, p: u64, work: i64) -> S {
    match s.exact_integer() {
        Some(k) => S::lift(PadicNumber::from_i64(p, k, work as u32)),
        None => s.clone(),
    }
}

/// Shared set-up for evaluating the inner series at one `s`.
struct Prepared<S> {
    work: i64,
    one_minus_s: S,
    s_minus_one: S,
    m_top: usize,
    bs: Vec<PadicNumber>,
    qp: QParam<PadicNumber>,
    policy: PrecisionPolicy,
    big_f: PadicNumber,
}

fn prepare<S: PadicScalar>(s: &S, ctx: &LpContext) -> Result<Prepared<S>> {
    let p = ctx.prime;
    let sv = s.value();
    if !sv.is_zero() && sv.valuation_lower_bound() < 0 {
        return Err(Error::Domain("s outside the disk D"));
    }
    let one = PadicNumber::one(p, 4096);
    let s1 = sv - &one;
    if s1.is_zero() {
        return Err(Error::Pole);
    }
    let v_s1 = s1.valuation_lower_bound().max(0);
    let m_top = match s.exact_integer() {
        // C(1-s, m) vanishes for m > 1 - s
        Some(k) if k <= 0 => (1 - k) as usize,
        _ => ctx.series_terms(v_s1),
    };
    let work = ctx.work_for(m_top, v_s1 + ctx.v_big_f());
    let s = embed_s(s, p, work);
    let one_s = S::lift(PadicNumber::one(p, work as u32 + 64));
    let d = PadicDomain::new(p, work)?;
    let qp = QParam::new(&d, ctx.q_at(work)?)?;
    let base = qp.power(&d, ctx.big_f as i64)?;
    let bs = qbernoulli_numbers(m_top, &base, ctx.h, &d)?;
    Ok(Prepared {
        work,
        one_minus_s: one_s.sub(&s),
        s_minus_one: s.sub(&one_s),
        m_top,
        bs,
        qp,
        policy: PrecisionPolicy::with_target(work),
        big_f: PadicNumber::from_i64(p, ctx.big_f as i64, work as u32 + 64),
    })
}

/// `<y>^{1-s} sum_{m <= m_top} C(1-s, m) (F/y)^m B_m` for a unit `y`.
fn partial_series<S: PadicScalar>(y: &PadicNumber, prep: &Prepared<S>) -> Result<S> {
    let p = y.prime();
    let omega = crate::padic::teichmuller_of_unit(y, &prep.policy)?;
    let angle = y.div(&omega)?;
    let power = padic_pow_s(&angle, &prep.one_minus_s, &prep.policy)?;
    let ratio = prep.big_f.div(y)?;
    let mut binom = S::lift(PadicNumber::one(p, prep.work as u32 + 64));
    let mut rpow = PadicNumber::one(p, prep.work as u32 + 64);
    let mut inner = binom.mul_const(&prep.bs[0]);
    for m in 1..=prep.m_top {
        let shift = PadicNumber::from_i64(p, -(m as i64 - 1), prep.work as u32 + 64);
        let inv_m = PadicNumber::from_i64(p, m as i64, prep.work as u32 + 64).inv()?;
        binom = binom.mul(&prep.one_minus_s.add_const(&shift)).mul_const(&inv_m);
        rpow = &rpow * &ratio;
        inner = inner.add(&binom.mul_const(&(&rpow * &prep.bs[m])));
    }
    Ok(power.mul(&inner))
}

fn prefactor<S: PadicScalar>(prep: &Prepared<S>) -> Result<S> {
    let den = prep.s_minus_one.mul_const(&prep.big_f);
    let one = S::lift(PadicNumber::one(prep.big_f.prime(), prep.work as u32 + 64));
    one.div(&den)
}

/// `H_{p,q}^{(h)}(s, y | F) = 1/((s-1) F) <y>^{1-s} sum_j C(1-s, j) (F/y)^j
/// B_{j,q^F}^{(h)}` for a p-adic unit `y` (e.g. `a + p t`).
pub fn h_pq<S: PadicScalar>(s: &S, y: &PadicNumber, ctx: &LpContext) -> Result<S> {
    if y.valuation() != Some(0) {
        return Err(Error::Domain("H_pq needs (a, p) = 1"));
    }
    let prep = prepare(s, ctx)?;
    let y = match y.to_small_integer() {
        Some(k) => PadicNumber::from_i64(ctx.prime, k, prep.work as u32),
        None => y.clone(),
    };
    let r = partial_series(&y, &prep)?.mul(&prefactor(&prep)?);
    ctx.deliver(r)
}

/// `L_{p,q}^{(h)}(s, t | chi)`.
pub fn l_pq<S: PadicScalar>(s: &S, t: &PadicNumber, ctx: &LpContext) -> Result<S> {
    let prep = prepare(s, ctx)?;
    let p = ctx.prime;
    let d = PadicDomain::new(p, prep.work)?;
    let t = ctx.embed_t(t, prep.work)?;
    let chi_vals = d.chi_values(&ctx.chi)?;
    let qh = prep.qp.power(&d, ctx.h)?;
    let pt = t.mul_i64(p as i64);
    let mut weight = PadicNumber::one(p, prep.work as u32 + 64);
    let mut total: Option<S> = None;
    for a in 1..=ctx.big_f {
        weight = &weight * &qh.value;
        if a % p == 0 {
            continue;
        }
        let c = &chi_vals[(a % ctx.chi.modulus()) as usize];
        if c.is_zero() {
            continue;
        }
        let y = &PadicNumber::from_i64(p, a as i64, prep.work as u32 + 64) + &pt;
        let term = partial_series(&y, &prep)?.mul_const(&(c * &weight));
        total = Some(match total {
            None => term,
            Some(acc) => acc.add(&term),
        });
    }
    let total = total.ok_or(Error::InvalidCharacter("character vanishes on every unit"))?;
    let r = total.mul(&prefactor(&prep)?);
    ctx.deliver(r)
}

/// `-(1/n) (B_{n,q,chi_n}^{(h)}(p t) - chi_n(p) p^{n-1} B_{n,q^p,chi_n}^{(h)}(t))`
/// with `chi_n` the primitive character of `chi omega^{-n}`.
pub fn interpolation_formula(n: usize, t: &PadicNumber, ctx: &LpContext) -> Result<PadicNumber> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1"));
    }
    let p = ctx.prime;
    let tw = twist(&ctx.chi, n as i64, p)?;
    let prim = tw.primitive();
    let fc = prim.modulus() as i64;
    let v_den = ctx.v_den(fc * p as i64);
    let work = ctx.target()
        + GUARD
        + (n as i64 + 2) * v_den
        + 2 * vp_factorial(p, n as u64 + 1) as i64
        + (n as i64) * vp_i64(p, fc) as i64
        + 2;
    let d = PadicDomain::new(p, work)?;
    let t = ctx.embed_t(t, work)?;
    let qp = QParam::new(&d, ctx.q_at(work)?)?;
    let pt = t.mul_i64(p as i64);
    let first = generalized_qbernoulli(n, &qp, ctx.h, prim, &pt, &d)?;
    let chi_p = prim.eval_padic(p as i64, p, &d.policy())?;
    let value = if chi_p.is_zero() {
        first
    } else {
        let qpp = qp.power(&d, p as i64)?;
        let second = generalized_qbernoulli(n, &qpp, ctx.h, prim, &t, &d)?;
        let pn1 = d.pow(&d.from_i64(p as i64), n as u32 - 1);
        &first - &(&(&chi_p * &pn1) * &second)
    };
    ctx.deliver_num(value.div_i64(-(n as i64))?)
}

fn residue_work(ctx: &LpContext) -> i64 {
    ctx.target() + GUARD + 2 * ctx.v_den(ctx.big_f as i64) + ctx.v_big_f()
}

/// `lim_{s->1} (s-1) L = 1/F sum_{(a,p)=1} chi(a) q^{ha} B_{0,q^F}^{(h)}`.
pub fn residue_sum(ctx: &LpContext) -> Result<PadicNumber> {
    let p = ctx.prime;
    let work = residue_work(ctx);
    let d = PadicDomain::new(p, work)?;
    let qp = QParam::new(&d, ctx.q_at(work)?)?;
    let b0 = qbernoulli_numbers(0, &qp.power(&d, ctx.big_f as i64)?, ctx.h, &d)?.remove(0);
    let chi_vals = d.chi_values(&ctx.chi)?;
    let qh = qp.power(&d, ctx.h)?;
    let mut weight = d.one();
    let mut sum = d.zero();
    for a in 1..=ctx.big_f {
        weight = d.mul(&weight, &qh.value);
        if a % p != 0 {
            let c = &chi_vals[(a % ctx.chi.modulus()) as usize];
            sum = d.add(&sum, &d.mul(c, &weight));
        }
    }
    let r = d.div(&d.mul(&sum, &b0), &d.from_i64(ctx.big_f as i64))?;
    ctx.deliver_num(r)
}

/// `h log_p q/(q^{hF} - 1) ((1 - q^{hF})/(1 - q^h) - (1 - q^{hF})/(1 - q^{hp}))`,
/// the residue at `s = 1` for the trivial character.
pub fn residue_closed_form(ctx: &LpContext) -> Result<PadicNumber> {
    if !ctx.chi.is_trivial() {
        return Err(Error::InvalidArgument("closed-form residue is for the trivial character"));
    }
    if ctx.h == 0 {
        return Err(Error::InvalidQ("closed-form residue needs h != 0"));
    }
    let p = ctx.prime;
    let work = residue_work(ctx) + 2 * ctx.v_den(p as i64);
    let d = PadicDomain::new(p, work)?;
    let qp = QParam::new(&d, ctx.q_at(work)?)?;
    let one = d.one();
    let qhf = qp.power(&d, ctx.h * ctx.big_f as i64)?;
    let qh = qp.power(&d, ctx.h)?;
    let qhp = qp.power(&d, ctx.h * p as i64)?;
    let num = d.sub(&one, &qhf.value);
    let bracket = d.sub(
        &d.div(&num, &d.sub(&one, &qh.value))?,
        &d.div(&num, &d.sub(&one, &qhp.value))?,
    );
    let lead = d.div(&qh.log, &d.sub(&qhf.value, &one))?;
    ctx.deliver_num(d.mul(&lead, &bracket))
}

/// `d/ds L_{p,q}^{(h)}(s, t | chi)` at `s = 0`, by pushing the jet `s` through
/// [`l_pq`].
pub fn dlds_at_0(t: &PadicNumber, ctx: &LpContext) -> Result<PadicNumber> {
    let p = ctx.prime;
    let big = (ctx.target() + 4096) as u32;
    let s = SJet::variable(PadicNumber::zero(p, big as i64), PadicNumber::one(p, big));
    Ok(l_pq(&s, t, ctx)?.der)
}

/// Common pieces of the two derivative formulas.
struct DerivativeParts {
    gamma_sum: PadicNumber,
    b1_sum: PadicNumber,
    log_f: PadicNumber,
}

fn derivative_parts(t: &PadicNumber, ctx: &LpContext) -> Result<DerivativeParts> {
    let p = ctx.prime;
    let m_top = ctx
        .series_terms(0)
        .max(gamma_terms(p, ctx.v_big_f(), ctx.target() + ctx.v_big_f()))
        + 2;
    let work = ctx.work_for(m_top, 2 * ctx.v_big_f() + 2);
    let d = PadicDomain::new(p, work)?;
    let policy = PrecisionPolicy::with_target(work);
    let t = ctx.embed_t(t, work)?;
    let qp = QParam::new(&d, ctx.q_at(work)?)?;
    let base = qp.power(&d, ctx.big_f as i64)?;
    let bs = qbernoulli_numbers(m_top, &base, ctx.h, &d)?;
    let chi1 = twist(&ctx.chi, 1, p)?;
    let chi1_vals = d.chi_values(chi1.full())?;
    let qh = qp.power(&d, ctx.h)?;
    let big_f = d.from_i64(ctx.big_f as i64);
    let pt = t.mul_i64(p as i64);
    let mut weight = d.one();
    let mut gamma_sum = d.zero();
    let mut weight_sum = d.zero();
    for a in 1..=ctx.big_f {
        weight = d.mul(&weight, &qh.value);
        if a % p == 0 {
            continue;
        }
        let c = &chi1_vals[(a % chi1.full().modulus()) as usize];
        if c.is_zero() {
            continue;
        }
        let w = d.mul(c, &weight);
        let x = d.div(&d.add(&d.from_i64(a as i64), &pt), &big_f)?;
        let g = diamond_log_gamma_q_from(&x, &bs, &policy)?;
        gamma_sum = d.add(&gamma_sum, &d.mul(&w, &g));
        weight_sum = d.add(&weight_sum, &w);
    }
    let b1_sum = d.mul(&weight_sum, &bs[1]);
    let log_f = iwasawa_log(&big_f, &policy)?;
    Ok(DerivativeParts {
        gamma_sum,
        b1_sum,
        log_f,
    })
}

/// The closed form for `d/ds L(0, t)` as stated:
/// `sum chi_1(a) q^{ha} G_{p,q^F}^{(h)}((a+pt)/F) - L(0, 0) log_p F
///  - sum chi_1(a) q^{ha} B_{1,q^F}^{(h)}`.
pub fn derivative_stated_form(t: &PadicNumber, ctx: &LpContext) -> Result<PadicNumber> {
    let parts = derivative_parts(t, ctx)?;
    let p = ctx.prime;
    let zero = PadicNumber::zero(p, ctx.target() + 4096);
    let l00 = l_pq(&zero, &zero, ctx)?;
    let r = &(&parts.gamma_sum - &(&l00 * &parts.log_f)) - &parts.b1_sum;
    ctx.deliver_num(r)
}

/// `sum chi_1(a) q^{ha} G_{p,q^F}^{(h)}((a+pt)/F) - L(0, t) log_p F`, which
/// is what differentiating the defining series at `s = 0` gives.
pub fn derivative_closed_form(t: &PadicNumber, ctx: &LpContext) -> Result<PadicNumber> {
    let parts = derivative_parts(t, ctx)?;
    let p = ctx.prime;
    let zero = PadicNumber::zero(p, ctx.target() + 4096);
    let l0t = l_pq(&zero, t, ctx)?;
    ctx.deliver_num(&parts.gamma_sum - &(&l0t * &parts.log_f))
}

/// `omega^{-n}(a) B_{n,q^F}^{(h)}(a/F) F^{n-1} (-1/n)`: the value of
/// [`h_pq`] at `s = 1 - n`.
pub fn h_pq_special_value(n: usize, a: i64, ctx: &LpContext) -> Result<PadicNumber> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1"));
    }
    let p = ctx.prime;
    if a.gcd(&(p as i64)) != 1 {
        return Err(Error::Domain("H_pq needs (a, p) = 1"));
    }
    let work = ctx.work_for(n, ctx.v_big_f() * (n as i64 + 1));
    let d = PadicDomain::new(p, work)?;
    let qp = QParam::new(&d, ctx.q_at(work)?)?;
    let base = qp.power(&d, ctx.big_f as i64)?;
    let bs = qbernoulli_numbers(n, &base, ctx.h, &d)?;
    let x = d.from_ratio(a, ctx.big_f as i64)?;
    let poly = crate::qbernoulli::binomial_transform(&bs, n, &x, &d);
    let omega = teichmuller(a, p, &d.policy())?;
    let fpow = d.pow(&d.from_i64(ctx.big_f as i64), n as u32 - 1);
    let v = d.div(&d.mul(&fpow, &poly), &omega.pow(n as u32))?;
    ctx.deliver_num(v.div_i64(-(n as i64))?)
}
