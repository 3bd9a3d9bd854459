//! Partial sums of the Volkenborn integral
//! `I(f) = lim_N p^{-N} sum_{x < p^N} f(x)` over `Z_p`.

use crate::error::{Error, Result};
use crate::padic::{pow_p, PadicNumber};

/// Largest `p^N` a partial sum may iterate over.
pub const MAX_POINTS: u64 = 1 << 22;

fn point_count(p: u64, level: u32) -> Result<u64> {
    let mut count: u64 = 1;
    for _ in 0..level {
        count = count.saturating_mul(p);
    }
    if count > MAX_POINTS {
        return Err(Error::BudgetExhausted {
            terms: MAX_POINTS as usize,
        });
    }
    Ok(count)
}

fn scale_down(sum: &PadicNumber, p: u64, level: u32) -> Result<PadicNumber> {
    let pn = PadicNumber::from_bigint(p, &pow_p(p, level).into(), sum.abs_prec().max(1) as u32 + 8);
    sum.div(&pn)
}

/// `p^{-N} sum_{x < p^N} q^{hx} x^n`, which tends to `B_{n,q}^{(h)}`.
pub fn volkenborn_moment(n: u32, q: &PadicNumber, h: i64, level: u32) -> Result<PadicNumber> {
    let p = q.prime();
    let count = point_count(p, level)?;
    let rel = q.rel_prec().max(1) + level + 8;
    let qh = if h >= 0 {
        q.pow(h as u32)
    } else {
        q.pow(h.unsigned_abs() as u32).inv()?
    };
    let mut weight = PadicNumber::one(p, rel);
    let mut sum = PadicNumber::zero(p, rel as i64 + 64);
    for x in 0..count {
        let xn = PadicNumber::from_i64(p, x as i64, rel).pow(n);
        sum = &sum + &(&weight * &xn);
        weight = &weight * &qh;
    }
    scale_down(&sum, p, level)
}

/// Integrands for [`volkenborn_shift_check`].
#[derive(Debug, Clone)]
pub enum Integrand {
    /// `x^n`
    Power(u32),
    /// `q^{hx} x^n`
    QPower { q: PadicNumber, h: i64, n: u32 },
}

impl Integrand {
    fn eval(&self, p: u64, x: u64, rel: u32) -> Result<PadicNumber> {
        let xp = PadicNumber::from_i64(p, x as i64, rel);
        match self {
            Integrand::Power(n) => Ok(xp.pow(*n)),
            Integrand::QPower { q, h, n } => {
                let qh = if *h >= 0 {
                    q.pow(*h as u32)
                } else {
                    q.pow(h.unsigned_abs() as u32).inv()?
                };
                Ok(&qh.pow(x as u32) * &xp.pow(*n))
            }
        }
    }

    /// `f'(0)`.
    fn derivative_at_zero(&self, p: u64, rel: u32) -> Result<PadicNumber> {
        let zero = || PadicNumber::zero(p, rel as i64);
        match self {
            Integrand::Power(1) => Ok(PadicNumber::one(p, rel)),
            Integrand::Power(_) => Ok(zero()),
            Integrand::QPower { n: 1, .. } => Ok(PadicNumber::one(p, rel)),
            Integrand::QPower { q, h, n: 0 } => {
                let policy = crate::padic::PrecisionPolicy::with_target(q.abs_prec().max(2));
                Ok(crate::padic::padic_log(q, &policy)?.mul_i64(*h))
            }
            Integrand::QPower { .. } => Ok(zero()),
        }
    }
}

/// `I_N(f(x + 1)) - I_N(f) - f'(0)` at level `N`; tends to zero.
pub fn volkenborn_shift_check(f: &Integrand, p: u64, level: u32) -> Result<PadicNumber> {
    crate::padic::check_odd_prime(p)?;
    let count = point_count(p, level)?;
    let rel = match f {
        Integrand::QPower { q, .. } => q.rel_prec().max(1),
        Integrand::Power(_) => 40,
    } + level
        + 8;
    let mut shifted = PadicNumber::zero(p, rel as i64 + 64);
    let mut plain = PadicNumber::zero(p, rel as i64 + 64);
    for x in 0..count {
        plain = &plain + &f.eval(p, x, rel)?;
        shifted = &shifted + &f.eval(p, x + 1, rel)?;
    }
    let diff = &scale_down(&shifted, p, level)? - &scale_down(&plain, p, level)?;
    Ok(&diff - &f.derivative_at_zero(p, rel)?)
}
