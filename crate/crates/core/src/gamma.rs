//! Diamond's p-adic log-gamma function and its q-deformation, both on
//! `|x|_p > 1`.

use num_bigint::BigInt;

use crate::domain::{v_qpow_minus_one, PadicDomain, QParam, QSource, ValueDomain};
use crate::error::{Error, Result};
use crate::padic::{iwasawa_log, vp_factorial, vp_i64, PadicNumber, PrecisionPolicy};
use crate::qbernoulli::qbernoulli_numbers;
use crate::volkenborn::MAX_POINTS;

const GUARD: i64 = 6;

/// Valuation of `x^{1-m}` is `(m-1) w` with `w = -v(x)`; the coefficient
/// `B_m / (m (m-1))` costs at most `1 + v(m) + v(m-1)`. Returns the last `m`
/// that can still matter at `target`.
pub(crate) fn gamma_terms(p: u64, w: i64, target: i64) -> usize {
    let mut m: i64 = 2;
    loop {
        let worst = (m - 1) * w - 1 - vp_i64(p, m) as i64 - vp_i64(p, m - 1) as i64;
        // the bound is not monotone in m, so look a few steps ahead
        let ahead = (m..m + 2 * p as i64).all(|k| {
            (k - 1) * w - 1 - vp_i64(p, k) as i64 - vp_i64(p, k - 1) as i64 >= target + GUARD
        });
        if worst >= target + GUARD && ahead {
            return (m - 1) as usize;
        }
        m += 1;
    }
}

fn check_domain(x: &PadicNumber) -> Result<i64> {
    match x.valuation() {
        Some(v) if v < 0 => Ok(-v),
        _ => Err(Error::Domain("log-gamma needs |x|_p > 1")),
    }
}

/// `G_p(x) = (x - 1/2) log_p x - x + sum_{j>=2} B_j/(j(j-1)) x^{1-j}`.
pub fn diamond_log_gamma(x: &PadicNumber, policy: &PrecisionPolicy) -> Result<PadicNumber> {
    let w = check_domain(x)?;
    let p = x.prime();
    let target = policy.target_abs_prec;
    let m_top = gamma_terms(p, w, target);
    let work = target + GUARD + 2 * vp_factorial(p, m_top as u64 + 1) as i64 + 2;
    let d = PadicDomain::new(p, work)?;
    let bern = qbernoulli_numbers(m_top, &QParam::unit(&d), 0, &d)?;
    let inner_policy = PrecisionPolicy::with_target(work);
    let log_x = iwasawa_log(x, &inner_policy)?;
    let half = d.from_ratio(1, 2)?;
    let mut acc = &(&(x - &half) * &log_x) - x;
    let inv = x.inv()?;
    let mut xpow = inv.clone();
    for (j, b) in bern.iter().enumerate().skip(2) {
        if !b.is_zero() {
            let denom = BigInt::from(j as i64 * (j as i64 - 1));
            let c = d.div(b, &d.from_big(&denom))?;
            acc = &acc + &(&c * &xpow);
        }
        xpow = &xpow * &inv;
    }
    policy.deliver(acc)
}

/// `(x B_0 + B_1) log_p x - x B_0 + sum_{m>=2} (-1)^m/(m(m-1)) B_m x^{1-m}`
/// for given `B_0, B_1, ...`; every available `B_m` is used.
pub(crate) fn diamond_log_gamma_q_from(
    x: &PadicNumber,
    bs: &[PadicNumber],
    policy: &PrecisionPolicy,
) -> Result<PadicNumber> {
    check_domain(x)?;
    if bs.len() < 2 {
        return Err(Error::InvalidArgument("need at least B_0 and B_1"));
    }
    let log_x = iwasawa_log(x, policy)?;
    let xb0 = x * &bs[0];
    let mut acc = &(&(&xb0 + &bs[1]) * &log_x) - &xb0;
    let inv = x.inv()?;
    let mut xpow = inv.clone();
    for (m, b) in bs.iter().enumerate().skip(2) {
        let mm = m as i64 * (m as i64 - 1);
        let c = b.div_i64(if m % 2 == 0 { mm } else { -mm })?;
        acc = &acc + &(&c * &xpow);
        xpow = &xpow * &inv;
    }
    Ok(acc)
}

/// `G_{p,q}^{(h)}(x)`, the q-deformed log-gamma, from its series in
/// `x^{-1}` with q-Bernoulli coefficients.
pub fn diamond_log_gamma_q(x: &PadicNumber, q: &QSource, h: i64, policy: &PrecisionPolicy) -> Result<PadicNumber> {
    let w = check_domain(x)?;
    let p = x.prime();
    let target = policy.target_abs_prec;
    let m_top = gamma_terms(p, w, target);
    let v_den = match (h, q.v_minus_one(p)?) {
        (0, _) | (_, None) => 0,
        (h, Some(v)) => v_qpow_minus_one(p, v, h),
    };
    let work = target + GUARD + (m_top as i64 + 2) * v_den + 2 * vp_factorial(p, m_top as u64 + 1) as i64;
    let d = PadicDomain::new(p, work)?;
    let qp = QParam::new(&d, q.at(p, work)?)?;
    let bs = qbernoulli_numbers(m_top, &qp, h, &d)?;
    let r = diamond_log_gamma_q_from(x, &bs, &PrecisionPolicy::with_target(work))?;
    policy.deliver(r)
}

/// Level-`N` Volkenborn sum
/// `p^{-N} sum_{z < p^N} q^{hz} ((x+z) log_p(x+z) - (x+z))`.
pub fn diamond_log_gamma_q_volkenborn(
    x: &PadicNumber,
    q: &PadicNumber,
    h: i64,
    level: u32,
    policy: &PrecisionPolicy,
) -> Result<PadicNumber> {
    check_domain(x)?;
    let p = x.prime();
    let count = (p as u128).pow(level);
    if count > MAX_POINTS as u128 {
        return Err(Error::BudgetExhausted {
            terms: MAX_POINTS as usize,
        });
    }
    let rel = policy.target_abs_prec as u32 + level + 8;
    let qh = if h >= 0 {
        q.pow(h as u32)
    } else {
        q.pow(h.unsigned_abs() as u32).inv()?
    };
    let log_x = iwasawa_log(x, policy)?;
    let inv_x = x.inv()?;
    let mut weight = PadicNumber::one(p, rel);
    let mut sum = PadicNumber::zero(p, rel as i64 + 64);
    for z in 0..count as u64 {
        let zp = PadicNumber::from_i64(p, z as i64, rel + 64);
        let y = x + &zp;
        // log_p(x + z) = log_p x + log(1 + z/x) with |z/x| < 1
        let log_y = if z == 0 {
            log_x.clone()
        } else {
            &log_x + &crate::padic::padic_log(&(&PadicNumber::one(p, rel + 64) + &(&zp * &inv_x)), policy)?
        };
        let f = &(&y * &log_y) - &y;
        sum = &sum + &(&weight * &f);
        weight = &weight * &qh;
    }
    let scale = PadicNumber::from_bigint(p, &BigInt::from(p).pow(level), rel + 64);
    sum.div(&scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_over_p(p: u64, num: i64, prec: u32) -> PadicNumber {
        PadicNumber::from_rational_prec(p, &BigInt::from(num), &BigInt::from(p), prec).unwrap()
    }

    #[test]
    fn rejects_integral_arguments() {
        let pol = PrecisionPolicy::with_target(10);
        let x = PadicNumber::from_i64(5, 3, 20);
        assert!(matches!(diamond_log_gamma(&x, &pol), Err(Error::Domain(_))));
    }

    #[test]
    fn h_zero_collapses_to_classical() {
        let pol = PrecisionPolicy::with_target(20);
        let x = x_over_p(5, 1, 60);
        let g = diamond_log_gamma(&x, &pol).unwrap();
        let gq = diamond_log_gamma_q(&x, &QSource::Rational { num: 6, den: 1 }, 0, &pol).unwrap();
        assert_eq!(g, gq);
    }

    #[test]
    fn shift_identity() {
        // I(f(z+1)) = I(f) + f'(0) with f(z) = (x+z) log(x+z) - (x+z) gives
        // G(x+1) - G(x) = log_p x
        let pol = PrecisionPolicy::with_target(15);
        let x = x_over_p(3, 2, 60);
        let x1 = &x + &PadicNumber::one(3, 60);
        let g0 = diamond_log_gamma(&x, &pol).unwrap();
        let g1 = diamond_log_gamma(&x1, &pol).unwrap();
        let l = iwasawa_log(&x, &pol).unwrap();
        assert!((&g1 - &g0).agreement(&l) >= 15);
    }
}
