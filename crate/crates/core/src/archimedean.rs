//! Complex q-zeta and q-L-functions for `|q| < 1`: direct series, partial
//! zeta functions, and the binomial continuation series whose values at
//! `s = 1 - k` are `-B_{k,q,chi}^{(h)}(x) / k`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_traits::Zero;

use crate::character::DirichletCharacter;
use crate::domain::{ComplexDomain, QParam};
use crate::error::{Error, Result};
use crate::qbernoulli::qbernoulli_numbers;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesBudget {
    /// Term cap for the direct series.
    pub max_n: usize,
    /// Absolute bound the certified tail must fall under.
    pub tail_tol: f64,
    /// Cap on the continuation series.
    pub m_max: usize,
}

impl Default for SeriesBudget {
    fn default() -> Self {
        SeriesBudget {
            max_n: 200_000,
            tail_tol: 1e-15,
            m_max: 60,
        }
    }
}

impl SeriesBudget {
    pub fn new(max_n: usize, tail_tol: f64, m_max: usize) -> Result<Self> {
        if max_n == 0 || m_max == 0 || !(tail_tol > 0.0) {
            return Err(Error::InvalidArgument("budget entries must be positive"));
        }
        Ok(SeriesBudget { max_n, tail_tol, m_max })
    }
}

fn cpow_real(base: f64, s: Complex64) -> Complex64 {
    (s * base.ln()).exp()
}

/// Classical Bernoulli numbers `B_0..=B_n` in double precision.
fn bernoulli_f64(n: usize) -> Vec<f64> {
    let mut b = alloc::vec![1.0f64];
    for m in 1..=n {
        let mut acc = 0.0;
        let mut binom = 1.0; // C(m+1, k)
        for (k, bk) in b.iter().enumerate() {
            acc += binom * bk;
            binom = binom * (m + 1 - k) as f64 / (k + 1) as f64;
        }
        b.push(-acc / (m + 1) as f64);
    }
    b
}

/// Hurwitz zeta `sum_{n>=0} (n + x)^{-s}`, continued to all `s != 1` by
/// Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: Complex64, x: f64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    if !(x > 0.0) {
        return Err(Error::Domain("Hurwitz zeta needs x > 0"));
    }
    const TERMS: usize = 14;
    let cutoff = 24 + s.norm() as usize;
    let mut sum = Complex64::zero();
    for k in 0..cutoff {
        sum += cpow_real(k as f64 + x, -s);
    }
    let big = cutoff as f64 + x;
    let one = Complex64::new(1.0, 0.0);
    sum += cpow_real(big, one - s) / (s - one);
    sum += cpow_real(big, -s) * 0.5;
    let bern = bernoulli_f64(2 * TERMS);
    // rising factorial s (s+1) ... (s + 2j - 2) / (2j)!
    let mut rising = s;
    let mut fact = 2.0;
    for j in 1..=TERMS {
        let term = rising / fact * bern[2 * j] * cpow_real(big, -s - (2 * j - 1) as f64);
        sum += term;
        rising = rising * (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
        fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
    }
    Ok(sum)
}

/// `sum_{n>=0} w(n) Q^n ((n+x)^{-s} - lambda/(s-1) (n+x)^{1-s})` for
/// `|Q| < 1`, summed until a certified geometric tail bound is met.
fn weighted_series(
    s: Complex64,
    x: f64,
    big_q: Complex64,
    lambda: Complex64,
    weight: impl Fn(usize) -> Complex64,
    start: usize,
    budget: &SeriesBudget,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let r = big_q.norm();
    if r >= 1.0 {
        return Err(Error::InvalidQ("direct series needs |q^h| < 1"));
    }
    let coeff = lambda / (s - one);
    let has_second = !lambda.is_zero();
    // polynomial envelope exponent of the larger of the two series
    let growth = if has_second { (1.0 - s.re).max(-s.re) } else { -s.re };
    let growth = growth.max(0.0);
    let scale = if has_second { 1.0 + coeff.norm() } else { 1.0 };
    let mut sum = Complex64::zero();
    let mut qn = big_q.powi(start as i32);
    for n in start..start + budget.max_n {
        let y = n as f64 + x;
        if y <= 0.0 {
            return Err(Error::Domain("n + x must be positive"));
        }
        let w = weight(n);
        if !w.is_zero() {
            let mut term = cpow_real(y, -s);
            if has_second {
                term -= coeff * cpow_real(y, one - s);
            }
            sum += w * qn * term;
        }
        qn *= big_q;
        let ratio = r * ((y + 1.0) / y).powf(growth);
        if ratio < 1.0 {
            let t_next = r.powi((n + 1) as i32) * (y + 1.0).powf(growth).max(1.0) * scale;
            if t_next / (1.0 - ratio) <= budget.tail_tol {
                return Ok(sum);
            }
        }
    }
    Err(Error::BudgetExhausted { terms: budget.max_n })
}

/// `Z(s, x) = sum Q^n/(n+x)^s - lambda/(s-1) sum Q^n/(n+x)^{s-1}` with
/// `Q = q^h`, `lambda = h log q`.
fn qzeta_core(s: Complex64, x: f64, big_q: &QParam<Complex64>, budget: &SeriesBudget) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    if !(x > 0.0) {
        return Err(Error::Domain("x must be positive"));
    }
    if big_q.log.is_zero() {
        return hurwitz_zeta(s, x);
    }
    weighted_series(s, x, big_q.value, big_q.log, |_| Complex64::new(1.0, 0.0), 0, budget)
}

fn q_param(q: Complex64) -> Result<QParam<Complex64>> {
    QParam::new(&ComplexDomain, q)
}

/// `zeta_q^{(h)}(s, x)`.
pub fn q_hurwitz_zeta(s: Complex64, x: f64, q: Complex64, h: i64, budget: &SeriesBudget) -> Result<Complex64> {
    let qp = q_param(q)?.power(&ComplexDomain, h)?;
    qzeta_core(s, x, &qp, budget)
}

/// `H_q^{(h)}(s, a | f) = f^{-s} q^{ha} zeta_{q^f}^{(h)}(s, a/f)`; `a` may
/// be a shifted argument `a + x`.
pub fn partial_zeta_h(s: Complex64, a: f64, f: u64, q: Complex64, h: i64, budget: &SeriesBudget) -> Result<Complex64> {
    if f == 0 {
        return Err(Error::InvalidArgument("f must be positive"));
    }
    let qp = q_param(q)?;
    let base = qp.power(&ComplexDomain, h * f as i64)?;
    let ff = f as f64;
    let lead = cpow_real(ff, -s) * (qp.log * (h as f64 * a)).exp();
    Ok(lead * qzeta_core(s, a / ff, &base, budget)?)
}

/// The Dirichlet series `sum_{n>=1} chi(n) q^{hn} n^{-s} - h log q/(s-1)
/// sum_{n>=1} chi(n) q^{hn} n^{1-s}`.
pub fn q_l_direct(s: Complex64, chi: &DirichletCharacter, q: Complex64, h: i64, budget: &SeriesBudget) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    let qh = q_param(q)?.power(&ComplexDomain, h)?;
    if qh.log.is_zero() {
        let f = chi.modulus();
        let mut acc = Complex64::zero();
        for a in 1..=f {
            let c = chi.eval_complex(a as i64);
            if !c.is_zero() {
                acc += c * cpow_real(f as f64, -s) * hurwitz_zeta(s, a as f64 / f as f64)?;
            }
        }
        return Ok(acc);
    }
    weighted_series(s, 0.0, qh.value, qh.log, |n| chi.eval_complex(n as i64), 1, budget)
}

/// `L_q^{(h)}(s, x | chi) = sum_{n>=0} chi(n) q^{hn} (n+x)^{-s} - h log
/// q/(s-1) sum_{n>=0} chi(n) q^{hn} (n+x)^{1-s}`, for `x > 0`.
pub fn q_l_hurwitz(
    s: Complex64,
    x: f64,
    chi: &DirichletCharacter,
    q: Complex64,
    h: i64,
    budget: &SeriesBudget,
) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    if !(x > 0.0) {
        return Err(Error::Domain("x must be positive"));
    }
    let qh = q_param(q)?.power(&ComplexDomain, h)?;
    if qh.log.is_zero() {
        let f = chi.modulus();
        let mut acc = Complex64::zero();
        for a in 0..f {
            let c = chi.eval_complex(a as i64);
            if !c.is_zero() {
                acc += c * cpow_real(f as f64, -s) * hurwitz_zeta(s, (a as f64 + x) / f as f64)?;
            }
        }
        return Ok(acc);
    }
    weighted_series(s, x, qh.value, qh.log, |n| chi.eval_complex(n as i64), 0, budget)
}

/// The continuation
/// `1/((s-1) f) sum_{a<f} chi(a) q^{ha} (a+x)^{1-s} sum_{m<=m_max}
/// C(1-s, m) (f/(a+x))^m B_{m,q^f}^{(h)}`.
///
/// At `s = 1 - k` the inner series stops at `m = k`. Otherwise every inner
/// series must have its last term under `1e-12` (relative), else the
/// budget is reported as exhausted.
pub fn q_l_continued(
    s: Complex64,
    x: f64,
    chi: &DirichletCharacter,
    q: Complex64,
    h: i64,
    m_max: usize,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if s == one {
        return Err(Error::Pole);
    }
    let f = chi.modulus();
    let ff = f as f64;
    let d = ComplexDomain;
    let qp = q_param(q)?;
    let base = qp.power(&d, f as i64)?;
    let terminating = s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0;
    let m_top = if terminating { (1.0 - s.re) as usize } else { m_max };
    let bs = qbernoulli_numbers(m_top, &base, h, &d)?;
    let mut total = Complex64::zero();
    for a in 0..f {
        let c = chi.eval_complex(a as i64);
        if c.is_zero() {
            continue;
        }
        let y = a as f64 + x;
        if y <= 0.0 {
            return Err(Error::Domain("a + x must be positive"));
        }
        let ratio = ff / y;
        let mut binom = one;
        let mut rpow = 1.0;
        let mut inner = Complex64::zero();
        let mut last = Complex64::zero();
        for (m, b) in bs.iter().enumerate() {
            if binom.is_zero() {
                break;
            }
            last = binom * rpow * b;
            inner += last;
            binom = binom * (one - s - m as f64) / (m + 1) as f64;
            rpow *= ratio;
        }
        if !terminating && last.norm() > 1e-12 * inner.norm().max(1.0) {
            return Err(Error::BudgetExhausted { terms: m_max });
        }
        let weight = c * (qp.log * (h * a as i64) as f64).exp();
        total += weight * cpow_real(y, one - s) * inner;
    }
    Ok(total / ((s - one) * ff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn hurwitz_known_values() {
        let z3 = hurwitz_zeta(c(3.0), 1.0).unwrap();
        assert!((z3 - c(1.2020569031595942)).norm() < 1e-14);
        let zm1 = hurwitz_zeta(c(-1.0), 1.0).unwrap();
        assert!((zm1 - c(-1.0 / 12.0)).norm() < 1e-13);
        let z0 = hurwitz_zeta(c(0.0), 0.3).unwrap();
        assert!((z0 - c(0.2)).norm() < 1e-13);
        assert_eq!(hurwitz_zeta(c(1.0), 0.5), Err(Error::Pole));
    }

    #[test]
    fn h_zero_is_plain_hurwitz() {
        let b = SeriesBudget::default();
        let direct: Complex64 = (0..200_000).map(|n| c((n as f64 + 1.0).powi(-3))).sum();
        let z = q_hurwitz_zeta(c(3.0), 1.0, c(0.5), 0, &b).unwrap();
        assert!((z - direct).norm() < 1e-10);
    }

    #[test]
    fn geometric_case_matches_brute_force() {
        let b = SeriesBudget::default();
        let s = c(3.0);
        let l = 0.5f64.ln();
        let mut first = 0.0;
        let mut second = 0.0;
        for n in 0..200 {
            let y = n as f64 + 1.0;
            first += 0.5f64.powi(n) / y.powi(3);
            second += 0.5f64.powi(n) / y.powi(2);
        }
        let expect = first - l / 2.0 * second;
        let z = q_hurwitz_zeta(s, 1.0, c(0.5), 1, &b).unwrap();
        assert!((z - c(expect)).norm() < 1e-12);
    }

    #[test]
    fn tiny_q_is_dominated_by_first_term() {
        let b = SeriesBudget::default();
        let q: f64 = 1e-6;
        let s = c(2.0);
        let x: f64 = 0.5;
        let lead = x.powi(-2) - q.ln() / (2.0 - 1.0) * x.powi(-1);
        let next = q * ((1.0 + x).powi(-2) - q.ln() * (1.0 + x).powi(-1));
        let z = q_hurwitz_zeta(s, x, c(q), 1, &b).unwrap();
        assert!((z - c(lead + next)).norm() < 1e-10);
    }

    #[test]
    fn continuation_terminates_at_nonpositive_integers() {
        let chi = DirichletCharacter::legendre(5).unwrap();
        let a = q_l_continued(c(-2.0), 1.0, &chi, c(0.5), 1, 4).unwrap();
        let b = q_l_continued(c(-2.0), 1.0, &chi, c(0.5), 1, 40).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pole_is_reported() {
        let b = SeriesBudget::default();
        let chi = DirichletCharacter::trivial();
        assert_eq!(q_l_hurwitz(c(1.0), 0.5, &chi, c(0.5), 1, &b), Err(Error::Pole));
        assert_eq!(q_l_continued(c(1.0), 0.5, &chi, c(0.5), 1, 5), Err(Error::Pole));
    }
}
