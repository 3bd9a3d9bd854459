//! p-adic logarithm and exponential, the Teichmüller character and the
//! analytic power `u^s` for principal units.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{pow_p, vp_factorial, PadicNumber, PrecisionPolicy};
use crate::error::{Error, Result};
use crate::jet::SJet;

/// Something an `s`-variable can be: a plain p-adic number, or a jet that
/// also carries `d/ds`.
pub trait PadicScalar: Clone + core::fmt::Debug {
    fn lift(x: PadicNumber) -> Self;
    fn value(&self) -> &PadicNumber;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn mul_const(&self, c: &PadicNumber) -> Self;
    fn add_const(&self, c: &PadicNumber) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn exp(&self, policy: &PrecisionPolicy) -> Result<Self>;
    /// `Some(k)` when this is exactly the integer `k` with no `s`-dependence.
    fn exact_integer(&self) -> Option<i64>;
    /// The smallest absolute precision over all slots.
    fn abs_prec(&self) -> i64;
    fn with_abs_prec(&self, abs: i64) -> Self;
}

impl PadicScalar for PadicNumber {
    fn lift(x: PadicNumber) -> Self {
        x
    }
    fn value(&self) -> &PadicNumber {
        self
    }
    fn add(&self, o: &Self) -> Self {
        PadicNumber::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        PadicNumber::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        PadicNumber::mul(self, o)
    }
    fn mul_const(&self, c: &PadicNumber) -> Self {
        PadicNumber::mul(self, c)
    }
    fn add_const(&self, c: &PadicNumber) -> Self {
        PadicNumber::add(self, c)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        PadicNumber::div(self, o)
    }
    fn exp(&self, policy: &PrecisionPolicy) -> Result<Self> {
        padic_exp(self, policy)
    }
    fn exact_integer(&self) -> Option<i64> {
        self.to_small_integer()
    }
    fn abs_prec(&self) -> i64 {
        PadicNumber::abs_prec(self)
    }
    fn with_abs_prec(&self, abs: i64) -> Self {
        PadicNumber::with_abs_prec(self, abs)
    }
}

impl PadicScalar for SJet<PadicNumber> {
    fn lift(x: PadicNumber) -> Self {
        let zero = PadicNumber::zero(x.prime(), x.abs_prec().max(0) + 1024);
        SJet::constant(x, zero)
    }
    fn value(&self) -> &PadicNumber {
        &self.val
    }
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn mul_const(&self, c: &PadicNumber) -> Self {
        self.scale(c)
    }
    fn add_const(&self, c: &PadicNumber) -> Self {
        SJet::new(&self.val + c, self.der.clone())
    }
    fn div(&self, o: &Self) -> Result<Self> {
        let val = self.val.div(&o.val)?;
        // (a/b)' = (a' - (a/b) b') / b
        let der = (&self.der - &(&val * &o.der)).div(&o.val)?;
        Ok(SJet::new(val, der))
    }
    fn exp(&self, policy: &PrecisionPolicy) -> Result<Self> {
        let e = padic_exp(&self.val, policy)?;
        let der = &e * &self.der;
        Ok(SJet::new(e, der))
    }
    fn exact_integer(&self) -> Option<i64> {
        if self.der.is_zero() && self.der.abs_prec() >= 8 {
            self.val.to_small_integer()
        } else {
            None
        }
    }
    fn abs_prec(&self) -> i64 {
        self.val.abs_prec().min(self.der.abs_prec())
    }
    fn with_abs_prec(&self, abs: i64) -> Self {
        SJet::new(self.val.with_abs_prec(abs), self.der.with_abs_prec(abs))
    }
}

fn ilog(p: u64, n: u64) -> i64 {
    let mut k = 0;
    let mut n = n;
    while n >= p {
        n /= p;
        k += 1;
    }
    k
}

/// `log_p x` on the principal disk `|x - 1|_p < 1`.
pub fn padic_log(x: &PadicNumber, policy: &PrecisionPolicy) -> Result<PadicNumber> {
    if x.is_zero() || x.valuation() != Some(0) {
        return Err(Error::Domain("log_p needs |x - 1|_p < 1"));
    }
    let p = x.prime();
    let one = PadicNumber::one(p, x.rel_prec());
    let y = x - &one;
    let target = policy.target_abs_prec;
    if y.is_zero() {
        return Ok(PadicNumber::zero(p, y.abs_prec().min(target)));
    }
    let vy = y.valuation_lower_bound();
    if vy < 1 {
        return Err(Error::Domain("log_p needs |x - 1|_p < 1"));
    }
    let mut sum = PadicNumber::zero(p, i64::MAX / 4);
    let mut power = y.clone();
    let mut n: u64 = 1;
    loop {
        // terms from n on have valuation >= n v(y) - log_p(n)
        if n as i64 * vy - ilog(p, n) >= target {
            break;
        }
        if n as usize > policy.max_terms {
            return Err(Error::BudgetExhausted { terms: n as usize });
        }
        let term = power.div_i64(n as i64)?;
        sum = if n % 2 == 1 { &sum + &term } else { &sum - &term };
        power = &power * &y;
        n += 1;
    }
    Ok(sum.with_abs_prec(target))
}

/// `exp_p x` for `v_p(x) >= 1`.
pub fn padic_exp(x: &PadicNumber, policy: &PrecisionPolicy) -> Result<PadicNumber> {
    let p = x.prime();
    let target = policy.target_abs_prec;
    if x.is_zero() {
        let a = x.abs_prec().min(target);
        if a < 1 {
            return Err(Error::Domain("exp_p argument not known to lie in pZ_p"));
        }
        return Ok(PadicNumber::one(p, a as u32));
    }
    let vx = x.valuation_lower_bound();
    if vx < 1 {
        return Err(Error::Domain("exp_p needs v_p(x) >= 1"));
    }
    let rel = (target.max(1) + 8) as u32;
    let mut sum = PadicNumber::one(p, rel);
    let mut term = PadicNumber::one(p, rel);
    let mut n: u64 = 1;
    loop {
        // v(x^n / n!) >= n v(x) - (n - 1)/(p - 1), increasing in n
        let bound_num = n as i64 * vx * (p as i64 - 1) - (n as i64 - 1);
        if bound_num >= target * (p as i64 - 1) {
            break;
        }
        if n as usize > policy.max_terms {
            return Err(Error::BudgetExhausted { terms: n as usize });
        }
        term = (&term * x).div_i64(n as i64)?;
        sum = &sum + &term;
        n += 1;
    }
    debug_assert!(vp_factorial(p, n) <= n);
    Ok(sum.with_abs_prec(target))
}

/// `omega(a)`: the `(p-1)`-st root of unity congruent to `a` mod `p`.
pub fn teichmuller(a: i64, p: u64, policy: &PrecisionPolicy) -> Result<PadicNumber> {
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::Domain("Teichmüller character needs gcd(a, p) = 1"));
    }
    let w = policy.target_abs_prec.max(1) as u32;
    let m = pow_p(p, w);
    let r = BigInt::from(a).mod_floor(&BigInt::from(p));
    let mut x = r.to_biguint().unwrap_or_default();
    let e = BigUint::from(p);
    // x -> x^p converges to omega(a) in at most w steps
    for _ in 0..=w {
        let y = x.modpow(&e, &m);
        if y == x {
            break;
        }
        x = y;
    }
    Ok(PadicNumber::from_bigint(p, &BigInt::from(x), w))
}

/// `omega` of a p-adic unit, which only depends on its residue mod `p`.
pub fn teichmuller_of_unit(u: &PadicNumber, policy: &PrecisionPolicy) -> Result<PadicNumber> {
    if u.is_zero() || u.valuation() != Some(0) {
        return Err(Error::Domain("Teichmüller character needs a p-adic unit"));
    }
    let r = u
        .residue_mod_pk(1)
        .and_then(|r| r.to_i64())
        .ok_or(Error::Domain("unit not known mod p"))?;
    teichmuller(r, u.prime(), policy)
}

/// `<a> = a / omega(a)`, a principal unit.
pub fn angle(a: i64, p: u64, policy: &PrecisionPolicy) -> Result<PadicNumber> {
    let w = teichmuller(a, p, policy)?;
    let a = PadicNumber::from_i64(p, a, policy.target_abs_prec.max(1) as u32);
    a.div(&w)
}

pub fn angle_of_unit(u: &PadicNumber, policy: &PrecisionPolicy) -> Result<PadicNumber> {
    let w = teichmuller_of_unit(u, policy)?;
    u.div(&w)
}

/// Iwasawa's logarithm on all of `Q_p^x`: `log_p p = 0` and `log_p` kills
/// roots of unity, so `log_p x = log_p <u>` for `x = p^v u`.
pub fn iwasawa_log(x: &PadicNumber, policy: &PrecisionPolicy) -> Result<PadicNumber> {
    if x.is_zero() {
        return Err(Error::Domain("log_p of zero"));
    }
    let u = x.unit_part();
    let ang = angle_of_unit(&u, policy)?;
    padic_log(&ang, policy)
}

/// `u^s = exp(s log_p u)` for a principal unit `u` and `s` in `Z_p`
/// (the disk on which the power is analytic in `s`).
pub fn padic_pow_s<S: PadicScalar>(u: &PadicNumber, s: &S, policy: &PrecisionPolicy) -> Result<S> {
    if u.valuation() != Some(0) {
        return Err(Error::Domain("u^s needs u = 1 mod p"));
    }
    let one = PadicNumber::one(u.prime(), u.rel_prec());
    if (u - &one).valuation_lower_bound() < 1 {
        return Err(Error::Domain("u^s needs u = 1 mod p"));
    }
    if !s.value().is_zero() && s.value().valuation_lower_bound() < 0 {
        return Err(Error::Domain("s outside the disk |s|_p <= 1"));
    }
    let l = padic_log(u, policy)?;
    let arg = s.mul_const(&l);
    if arg.value().is_zero() && arg.value().abs_prec() < 1 {
        return Err(Error::Domain("s log u not known to lie in pZ_p"));
    }
    arg.exp(policy)
}
