//! Value domains for the Bernoulli machinery: `C` in double precision and
//! `Q_p` with tracked precision.

use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::character::DirichletCharacter;
use crate::error::{Error, Result};
use crate::padic::{check_odd_prime, padic_log, vp_i64, PadicNumber, PrecisionPolicy};

/// A field with a logarithm on the admissible `q`.
pub trait ValueDomain {
    type Elem: Clone + Debug;

    fn from_big(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// `log q`, checking that `q` is admissible.
    fn log_q(&self, q: &Self::Elem) -> Result<Self::Elem>;
    /// Whether `x` is indistinguishable from zero.
    fn is_negligible(&self, x: &Self::Elem) -> bool;
    /// `chi(0), ..., chi(f-1)`.
    fn chi_values(&self, chi: &DirichletCharacter) -> Result<Vec<Self::Elem>>;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_big(&BigInt::from(n))
    }

    fn zero(&self) -> Self::Elem {
        self.from_i64(0)
    }

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem> {
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    fn pow(&self, x: &Self::Elem, k: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn powi(&self, x: &Self::Elem, k: i64) -> Result<Self::Elem> {
        let r = self.pow(x, k.unsigned_abs() as u32);
        if k < 0 {
            self.div(&self.one(), &r)
        } else {
            Ok(r)
        }
    }
}

/// `q` together with `log q`, so that `q^k` carries `log(q^k) = k log q`
/// without branch ambiguity.
#[derive(Debug, Clone, PartialEq)]
pub struct QParam<E> {
    pub value: E,
    pub log: E,
}

impl<E: Clone + Debug> QParam<E> {
    pub fn new<D: ValueDomain<Elem = E>>(d: &D, q: E) -> Result<Self> {
        let log = d.log_q(&q)?;
        Ok(QParam { value: q, log })
    }

    /// The `q = 1` parameter (only meaningful with `h = 0`).
    pub fn unit<D: ValueDomain<Elem = E>>(d: &D) -> Self {
        QParam {
            value: d.one(),
            log: d.zero(),
        }
    }

    /// `q^k` with its logarithm.
    pub fn power<D: ValueDomain<Elem = E>>(&self, d: &D, k: i64) -> Result<Self> {
        Ok(QParam {
            value: d.powi(&self.value, k)?,
            log: d.mul(&d.from_i64(k), &self.log),
        })
    }
}

/// Double-precision complex numbers.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexDomain;

impl ValueDomain for ComplexDomain {
    type Elem = Complex64;

    fn from_big(&self, n: &BigInt) -> Complex64 {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn div(&self, a: &Complex64, b: &Complex64) -> Result<Complex64> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a / b)
    }
    fn log_q(&self, q: &Complex64) -> Result<Complex64> {
        if q.is_zero() {
            return Err(Error::InvalidQ("q must be nonzero"));
        }
        Ok(q.ln())
    }
    fn is_negligible(&self, x: &Complex64) -> bool {
        x.norm() < 1e-300
    }
    fn chi_values(&self, chi: &DirichletCharacter) -> Result<Vec<Complex64>> {
        Ok((0..chi.modulus() as i64).map(|a| chi.eval_complex(a)).collect())
    }
    fn powi(&self, x: &Complex64, k: i64) -> Result<Complex64> {
        if k < 0 && x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(x.powi(k as i32))
    }
}

/// `Q_p`, embedding integers with `work` significant digits.
#[derive(Debug, Clone)]
pub struct PadicDomain {
    prime: u64,
    work: i64,
}

impl PadicDomain {
    pub fn new(prime: u64, work: i64) -> Result<Self> {
        check_odd_prime(prime)?;
        if work < 1 {
            return Err(Error::InvalidArgument("working precision must be positive"));
        }
        Ok(PadicDomain { prime, work })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn work(&self) -> i64 {
        self.work
    }

    /// A rational number to the working precision.
    pub fn rational(&self, num: i64, den: i64) -> Result<PadicNumber> {
        PadicNumber::from_rational_prec(
            self.prime,
            &BigInt::from(num),
            &BigInt::from(den),
            self.work as u32,
        )
    }

    /// Policy used for `log` and other analytic helpers.
    pub fn policy(&self) -> PrecisionPolicy {
        PrecisionPolicy::with_target(self.work.max(2))
    }
}

impl ValueDomain for PadicDomain {
    type Elem = PadicNumber;

    fn from_big(&self, n: &BigInt) -> PadicNumber {
        // integers are exact, so give them generous precision
        PadicNumber::from_bigint(self.prime, n, (self.work + 64) as u32)
    }
    fn add(&self, a: &PadicNumber, b: &PadicNumber) -> PadicNumber {
        a + b
    }
    fn sub(&self, a: &PadicNumber, b: &PadicNumber) -> PadicNumber {
        a - b
    }
    fn mul(&self, a: &PadicNumber, b: &PadicNumber) -> PadicNumber {
        a * b
    }
    fn div(&self, a: &PadicNumber, b: &PadicNumber) -> Result<PadicNumber> {
        a.div(b)
    }
    fn log_q(&self, q: &PadicNumber) -> Result<PadicNumber> {
        if q.prime() != self.prime {
            return Err(Error::PrimeMismatch {
                left: q.prime(),
                right: self.prime,
            });
        }
        let one = PadicNumber::one(self.prime, (self.work + 64) as u32);
        let d = q - &one;
        // |q - 1|_p < p^{-1/(p-1)} means v(q - 1) >= 1 for odd p
        if d.valuation_lower_bound() < 1 {
            return Err(Error::InvalidQ("need |q - 1|_p < p^(-1/(p-1))"));
        }
        padic_log(q, &PrecisionPolicy::with_target(q.abs_prec().max(2)))
    }
    fn is_negligible(&self, x: &PadicNumber) -> bool {
        x.is_zero()
    }
    fn chi_values(&self, chi: &DirichletCharacter) -> Result<Vec<PadicNumber>> {
        chi.padic_table(self.prime, &PrecisionPolicy::with_target(self.work + 64))
    }
}

/// How `q` was supplied: exactly (rebuilt at any precision) or as a fixed
/// p-adic number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSource {
    Rational { num: i64, den: i64 },
    Fixed(PadicNumber),
}

impl QSource {
    /// `q` to `work` significant digits (a fixed `q` keeps its own).
    pub fn at(&self, p: u64, work: i64) -> Result<PadicNumber> {
        match self {
            QSource::Rational { num, den } => {
                PadicNumber::from_rational_prec(p, &BigInt::from(*num), &BigInt::from(*den), work as u32)
            }
            QSource::Fixed(q) if q.prime() != p => Err(Error::PrimeMismatch {
                left: q.prime(),
                right: p,
            }),
            QSource::Fixed(q) => Ok(q.clone()),
        }
    }

    /// `v_p(q - 1)`, `None` when `q = 1`.
    pub fn v_minus_one(&self, p: u64) -> Result<Option<i64>> {
        match self {
            QSource::Rational { den: 0, .. } => Err(Error::DivisionByZero),
            QSource::Rational { num, den } => Ok(v_ratio_minus_one(p, *num, *den)),
            QSource::Fixed(q) => {
                let one = PadicNumber::one(p, q.rel_prec().max(1) + 64);
                Ok((q - &one).valuation())
            }
        }
    }
}

/// `v_p(q^k - 1)` for `v_p(q - 1) = vq >= 1` and `k != 0`.
pub fn v_qpow_minus_one(p: u64, vq: i64, k: i64) -> i64 {
    vq + vp_i64(p, k) as i64
}

/// `v_p(num/den - 1)`, or `None` for `num/den = 1`.
pub fn v_ratio_minus_one(p: u64, num: i64, den: i64) -> Option<i64> {
    let diff = num as i128 - den as i128;
    if diff == 0 {
        return None;
    }
    let v = |x: i128| {
        let mut x = x.unsigned_abs();
        let mut k = 0i64;
        while x.is_multiple_of(p as u128) {
            x /= p as u128;
            k += 1;
        }
        k
    };
    Some(v(diff) - v(den as i128))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_q_power_tracks_log() {
        let d = ComplexDomain;
        let q = QParam::new(&d, Complex64::new(0.5, 0.0)).unwrap();
        let q3 = q.power(&d, 3).unwrap();
        assert!((q3.value - Complex64::new(0.125, 0.0)).norm() < 1e-15);
        assert!((q3.log - Complex64::new(3.0 * 0.5f64.ln(), 0.0)).norm() < 1e-15);
        let qm = q.power(&d, -2).unwrap();
        assert!((qm.value - Complex64::new(4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn padic_q_must_be_near_one() {
        let d = PadicDomain::new(5, 20).unwrap();
        assert!(QParam::new(&d, d.rational(6, 1).unwrap()).is_ok());
        assert!(matches!(
            QParam::new(&d, d.rational(2, 1).unwrap()),
            Err(Error::InvalidQ(_))
        ));
    }

    #[test]
    fn valuation_helpers() {
        assert_eq!(v_ratio_minus_one(5, 6, 1), Some(1));
        assert_eq!(v_ratio_minus_one(5, 26, 1), Some(2));
        assert_eq!(v_ratio_minus_one(5, 1, 1), None);
        assert_eq!(v_qpow_minus_one(5, 1, 10), 2);
        let d = PadicDomain::new(5, 30).unwrap();
        let q = d.rational(6, 1).unwrap();
        let q10 = d.pow(&q, 10);
        let one = d.one();
        assert_eq!((&q10 - &one).valuation(), Some(2));
    }
}
