//! Finite-precision elements of `Q_p` for an odd prime `p`.
//!
//! A nonzero element is stored as `p^v * u` where `u` is a unit known modulo
//! `p^r`; `r` is the relative precision and `v + r` the absolute precision.
//! Zero carries only an absolute precision: it means "some element of
//! `p^N Z_p`". All arithmetic propagates precision conservatively, so a
//! result never claims more digits than its operands justify.

mod analytic;

pub use analytic::{
    angle, angle_of_unit, iwasawa_log, padic_exp, padic_log, padic_pow_s, teichmuller,
    teichmuller_of_unit, PadicScalar,
};

use alloc::vec::Vec;
use core::cmp::min;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// How many p-adic digits computations should deliver and how much work
/// series may do to get there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    /// Results are guaranteed modulo `p^target_abs_prec`.
    pub target_abs_prec: i64,
    /// Hard cap on the number of terms any single series may use.
    pub max_terms: usize,
    /// Below this absolute precision an operation reports underflow.
    pub min_abs_prec: i64,
}

impl PrecisionPolicy {
    pub fn new(target_abs_prec: i64, max_terms: usize, min_abs_prec: i64) -> Result<Self> {
        if min_abs_prec < 1 {
            return Err(Error::InvalidArgument("min_abs_prec must be at least 1"));
        }
        if target_abs_prec <= min_abs_prec {
            return Err(Error::InvalidArgument(
                "target_abs_prec must exceed min_abs_prec",
            ));
        }
        if max_terms == 0 {
            return Err(Error::InvalidArgument("max_terms must be positive"));
        }
        Ok(PrecisionPolicy {
            target_abs_prec,
            max_terms,
            min_abs_prec,
        })
    }

    /// A policy targeting `digits` digits with a generous term budget.
    pub fn with_target(digits: i64) -> Self {
        PrecisionPolicy {
            target_abs_prec: digits.max(2),
            max_terms: 4096,
            min_abs_prec: 1,
        }
    }

    /// Same policy with the target raised by `extra` digits; used to carry
    /// guard digits through intermediate steps.
    pub fn raised(&self, extra: i64) -> Self {
        PrecisionPolicy {
            target_abs_prec: self.target_abs_prec + extra,
            ..*self
        }
    }

    /// Fails when `x` is known to fewer digits than the floor.
    pub fn check(&self, x: &PadicNumber) -> Result<()> {
        if x.abs_prec() < self.min_abs_prec {
            return Err(Error::PrecisionUnderflow {
                have: x.abs_prec(),
                need: self.min_abs_prec,
            });
        }
        Ok(())
    }

    /// Fails unless `x` is known to the full target; on success returns `x`
    /// truncated to the target.
    pub fn deliver(&self, x: PadicNumber) -> Result<PadicNumber> {
        if x.abs_prec() < self.target_abs_prec {
            return Err(Error::PrecisionUnderflow {
                have: x.abs_prec(),
                need: self.target_abs_prec,
            });
        }
        Ok(x.with_abs_prec(self.target_abs_prec))
    }
}

/// An element of `Q_p` known to finite precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    prime: u64,
    /// Valuation for nonzero elements; absolute precision for zero.
    valuation: i64,
    /// Unit part in `[1, p^rel_prec)`; `0` marks zero.
    unit: BigUint,
    rel_prec: u32,
}

pub(crate) fn pow_p(p: u64, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), k as usize)
}

/// `(v_p(n), n / p^v)` for nonzero `n`.
pub(crate) fn split_p(p: u64, n: &BigUint) -> (u32, BigUint) {
    debug_assert!(!n.is_zero());
    let pb = BigUint::from(p);
    let mut v = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero machine integer.
pub fn vp_i64(p: u64, n: i64) -> u32 {
    debug_assert!(n != 0);
    let mut n = n.unsigned_abs();
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `v_p(n!)` by Legendre's formula.
pub fn vp_factorial(p: u64, n: u64) -> u64 {
    let mut v = 0;
    let mut pk = p;
    while pk <= n {
        v += n / pk;
        match pk.checked_mul(p) {
            Some(x) => pk = x,
            None => break,
        }
    }
    v
}

/// Odd primes only; `p = 2` is out of scope.
pub fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::InvalidArgument("p must be an odd prime"));
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Err(Error::InvalidArgument("p must be an odd prime"));
        }
        d += 2;
    }
    Ok(())
}

impl PadicNumber {
    /// The element `O(p^abs_prec)`.
    pub fn zero(prime: u64, abs_prec: i64) -> Self {
        PadicNumber {
            prime,
            valuation: abs_prec,
            unit: BigUint::zero(),
            rel_prec: 0,
        }
    }

    pub fn one(prime: u64, rel_prec: u32) -> Self {
        Self::from_i64(prime, 1, rel_prec)
    }

    /// Builds `p^m * x` known modulo `p^(m + n)` from an arbitrary residue.
    fn normalized(prime: u64, m: i64, x: BigUint, n: i64) -> Self {
        if n <= 0 || x.is_zero() {
            return Self::zero(prime, m + n.max(0));
        }
        let x = x % pow_p(prime, n as u32);
        if x.is_zero() {
            return Self::zero(prime, m + n);
        }
        let (k, unit) = split_p(prime, &x);
        PadicNumber {
            prime,
            valuation: m + k as i64,
            unit,
            rel_prec: (n - k as i64) as u32,
        }
    }

    /// Like [`Self::normalized`] but from a signed residue.
    fn normalized_signed(prime: u64, m: i64, x: BigInt, n: i64) -> Self {
        if n <= 0 {
            return Self::zero(prime, m + n.max(0));
        }
        let modulus = BigInt::from(pow_p(prime, n as u32));
        let x = x.mod_floor(&modulus);
        Self::normalized(prime, m, x.to_biguint().unwrap_or_default(), n)
    }

    /// Embeds an integer with `rel_prec` digits after its leading one.
    pub fn from_bigint(prime: u64, n: &BigInt, rel_prec: u32) -> Self {
        if n.is_zero() {
            // Exact zero: report it as known to the requested precision.
            return Self::zero(prime, rel_prec as i64);
        }
        let (v, u) = split_p(prime, n.magnitude());
        let u = if n.sign() == Sign::Minus {
            BigInt::from(u).neg()
        } else {
            BigInt::from(u)
        };
        Self::normalized_signed(prime, v as i64, u, rel_prec as i64)
    }

    pub fn from_i64(prime: u64, n: i64, rel_prec: u32) -> Self {
        Self::from_bigint(prime, &BigInt::from(n), rel_prec)
    }

    /// `num / den` embedded in `Q_p`, with `rel_prec` significant digits.
    pub fn from_rational_prec(prime: u64, num: &BigInt, den: &BigInt, rel_prec: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(prime, rel_prec as i64));
        }
        let n = Self::from_bigint(prime, num, rel_prec);
        let d = Self::from_bigint(prime, den, rel_prec);
        n.div(&d)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// `None` for zero (infinite valuation, as far as is known).
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.valuation)
        }
    }

    /// Valuation, or the absolute precision for zero: a lower bound on the
    /// true valuation of whatever this element approximates.
    pub fn valuation_lower_bound(&self) -> i64 {
        self.valuation
    }

    pub fn rel_prec(&self) -> u32 {
        self.rel_prec
    }

    /// The element is known modulo `p^abs_prec`.
    pub fn abs_prec(&self) -> i64 {
        self.valuation + self.rel_prec as i64
    }

    pub fn unit(&self) -> &BigUint {
        &self.unit
    }

    /// `p^{-v} x`, the unit with the same digits.
    pub fn unit_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        PadicNumber {
            valuation: 0,
            ..self.clone()
        }
    }

    /// Base-`p` digits of the unit part, least significant first
    /// (exactly `rel_prec` of them).
    pub fn digits(&self) -> Vec<u64> {
        let pb = BigUint::from(self.prime);
        let mut u = self.unit.clone();
        let mut out = Vec::with_capacity(self.rel_prec as usize);
        for _ in 0..self.rel_prec {
            let (q, r) = u.div_rem(&pb);
            out.push(r.to_u64().unwrap_or(0));
            u = q;
        }
        out
    }

    /// Forgets digits beyond absolute precision `abs` (no-op if already
    /// coarser).
    pub fn with_abs_prec(&self, abs: i64) -> Self {
        if abs >= self.abs_prec() {
            return self.clone();
        }
        if self.is_zero() || abs <= self.valuation {
            return Self::zero(self.prime, abs.min(self.abs_prec()));
        }
        let r = (abs - self.valuation) as u32;
        PadicNumber {
            prime: self.prime,
            valuation: self.valuation,
            unit: &self.unit % pow_p(self.prime, r),
            rel_prec: r,
        }
    }

    fn assert_same_prime(&self, other: &Self) {
        assert_eq!(
            self.prime, other.prime,
            "p-adic operands over different primes"
        );
    }

    /// Signed representative of the unit part in `(-p^r/2, p^r/2]`.
    fn signed_unit(&self) -> BigInt {
        let m = pow_p(self.prime, self.rel_prec);
        let u = BigInt::from(self.unit.clone());
        if &self.unit * 2u32 > m {
            u - BigInt::from(m)
        } else {
            u
        }
    }

    /// The exact rational integer this element equals when it is an
    /// integer of small absolute value (at least 8 spare digits).
    pub fn to_small_integer(&self) -> Option<i64> {
        if self.is_zero() {
            return if self.abs_prec() >= 8 { Some(0) } else { None };
        }
        if self.valuation < 0 || self.rel_prec < 8 {
            return None;
        }
        let s = self.signed_unit();
        let bound = pow_p(self.prime, self.rel_prec / 2);
        if s.magnitude() >= &bound {
            return None;
        }
        let val = s * BigInt::from(pow_p(self.prime, self.valuation as u32));
        val.to_i64()
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m = pow_p(self.prime, self.rel_prec);
        PadicNumber {
            prime: self.prime,
            valuation: self.valuation,
            unit: m - &self.unit,
            rel_prec: self.rel_prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_prime(other);
        let abs = min(self.abs_prec(), other.abs_prec());
        if self.is_zero() {
            return other.with_abs_prec(abs);
        }
        if other.is_zero() {
            return self.with_abs_prec(abs);
        }
        let m = min(self.valuation, other.valuation);
        let p = self.prime;
        let a = &self.unit * pow_p(p, (self.valuation - m) as u32);
        let b = &other.unit * pow_p(p, (other.valuation - m) as u32);
        Self::normalized(p, m, a + b, abs - m)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_prime(other);
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Self::zero(self.prime, self.valuation + other.valuation),
            (true, false) => Self::zero(self.prime, self.valuation + other.valuation),
            (false, true) => Self::zero(self.prime, self.valuation + other.valuation),
            (false, false) => {
                let r = min(self.rel_prec, other.rel_prec);
                let unit = (&self.unit * &other.unit) % pow_p(self.prime, r);
                PadicNumber {
                    prime: self.prime,
                    valuation: self.valuation + other.valuation,
                    unit,
                    rel_prec: r,
                }
            }
        }
    }

    /// Multiplicative inverse; loses nothing in relative precision.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = pow_p(self.prime, self.rel_prec);
        let unit = self.unit.modinv(&m).ok_or(Error::DivisionByZero)?;
        Ok(PadicNumber {
            prime: self.prime,
            valuation: -self.valuation,
            unit,
            rel_prec: self.rel_prec,
        })
    }

    /// Division; the absolute precision drops by `v(other)`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.assert_same_prime(other);
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.prime, self.valuation - other.valuation));
        }
        let inv = other.inv()?;
        Ok(self.mul(&inv))
    }

    pub fn pow(&self, e: u32) -> Self {
        let rel = if self.is_zero() {
            self.valuation.max(1) as u32
        } else {
            self.rel_prec.max(1)
        };
        let mut acc = Self::one(self.prime, rel);
        if e == 0 {
            return acc;
        }
        if self.is_zero() {
            return Self::zero(self.prime, self.valuation * e as i64);
        }
        let mut base = self.clone();
        let mut e = e;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { base.clone() } else { acc.mul(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = PadicNumber::mul(&base, &base);
            }
        }
        acc
    }

    /// Multiply by a machine integer (exact, precision-preserving in the
    /// relative sense).
    pub fn mul_i64(&self, k: i64) -> Self {
        let rel = self.rel_prec.max(1) + 64;
        self.mul(&Self::from_i64(self.prime, k, rel))
    }

    pub fn div_i64(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::DivisionByZero);
        }
        let rel = self.rel_prec.max(1) + 64;
        self.div(&Self::from_i64(self.prime, k, rel))
    }

    /// Valuation of `self - other`: how many digits the two agree to. For
    /// elements equal to their common precision this is that precision.
    pub fn agreement(&self, other: &Self) -> i64 {
        self.sub(other).valuation_lower_bound()
    }

    /// Reduction to an integer modulo `p^k`, for elements of `Z_p`.
    pub fn residue_mod_pk(&self, k: u32) -> Option<BigUint> {
        if self.is_zero() {
            return if self.valuation >= k as i64 { Some(BigUint::zero()) } else { None };
        }
        if self.valuation < 0 || self.abs_prec() < k as i64 {
            return None;
        }
        let full = &self.unit * pow_p(self.prime, self.valuation as u32);
        Some(full % pow_p(self.prime, k))
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PadicNumber {
    /// `...d2 d1 d0 * p^v + O(p^N)` with digits most significant first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        if self.is_zero() {
            return write!(f, "O({p}^{})", self.valuation);
        }
        f.write_str("...")?;
        let digits = self.digits();
        for (i, d) in digits.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, " * {p}^{} + O({p}^{})", self.valuation, self.abs_prec())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&PadicNumber> for &PadicNumber {
            type Output = PadicNumber;
            fn $method(self, rhs: &PadicNumber) -> PadicNumber {
                PadicNumber::$method(self, rhs)
            }
        }
        impl $tr<PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $method(self, rhs: PadicNumber) -> PadicNumber {
                PadicNumber::$method(&self, &rhs)
            }
        }
        impl $tr<&PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $method(self, rhs: &PadicNumber) -> PadicNumber {
                PadicNumber::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        PadicNumber::neg(&self)
    }
}

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        PadicNumber::neg(self)
    }
}

/// The `padic_from_rational` operation: `num/den` to the policy's target
/// (relative) precision.
pub fn padic_from_rational(num: i64, den: i64, p: u64, policy: &PrecisionPolicy) -> Result<PadicNumber> {
    check_odd_prime(p)?;
    PadicNumber::from_rational_prec(
        p,
        &BigInt::from(num),
        &BigInt::from(den),
        policy.target_abs_prec.max(1) as u32,
    )
}

/// Binary operations of the `padic_arith` contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic: errors on mismatched primes, division by zero and
/// results whose precision falls under the policy floor.
pub fn padic_arith(
    a: &PadicNumber,
    b: &PadicNumber,
    op: ArithOp,
    policy: &PrecisionPolicy,
) -> Result<PadicNumber> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch {
            left: a.prime,
            right: b.prime,
        });
    }
    let r = match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    };
    policy.check(&r)?;
    Ok(r)
}

/// `|x|_p` as a float (zero maps to 0).
pub fn abs_value(x: &PadicNumber) -> f64 {
    match x.valuation() {
        None => 0.0,
        Some(v) => num_traits::Float::powi(x.prime() as f64, -(v as i32)),
    }
}
