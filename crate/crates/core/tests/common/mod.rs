//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use qlp_core::padic::{teichmuller, PadicNumber, PrecisionPolicy};
use qlp_core::DirichletCharacter;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorials(n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::one()];
    for k in 1..=n {
        let next = &out[k - 1] * rat(k as i64);
        out.push(next);
    }
    out
}

/// `n! [t^n]` of `t e^{a t} / (e^{f t} - 1)` for `n = 0..=n_max`, by exact
/// power-series division.
pub fn eq1_coefficients(a: i64, f: i64, n_max: usize) -> Vec<BigRational> {
    let fact = factorials(n_max + 1);
    let num: Vec<BigRational> = (0..=n_max)
        .map(|k| BigRational::from_integer(BigInt::from(a).pow(k as u32)) / &fact[k])
        .collect();
    // (e^{ft} - 1)/t
    let den: Vec<BigRational> = (0..=n_max)
        .map(|k| BigRational::from_integer(BigInt::from(f).pow(k as u32 + 1)) / &fact[k + 1])
        .collect();
    let mut quot: Vec<BigRational> = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        let mut acc = num[k].clone();
        for j in 0..k {
            acc -= &quot[j] * &den[k - j];
        }
        quot.push(acc / &den[0]);
    }
    quot.iter().zip(&fact).map(|(c, f)| c * f).collect()
}

/// Classical Bernoulli numbers with `B_1 = -1/2`.
pub fn bernoulli_rational(n_max: usize) -> Vec<BigRational> {
    eq1_coefficients(0, 1, n_max)
}

/// `B_n(x)` for rational `x`.
pub fn bernoulli_poly_rational(n: usize, x: &BigRational) -> BigRational {
    let b = bernoulli_rational(n);
    let mut acc = BigRational::zero();
    let mut binom = BigInt::one();
    for k in 0..=n {
        acc += BigRational::from_integer(binom.clone()) * &b[k] * pow_rat(x, (n - k) as u32);
        binom = binom * BigInt::from((n - k) as i64) / BigInt::from(k as i64 + 1);
    }
    acc
}

pub fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

pub fn padic_of_rational(p: u64, x: &BigRational, prec: u32) -> PadicNumber {
    PadicNumber::from_rational_prec(p, x.numer(), x.denom(), prec).expect("denominator is nonzero")
}

/// `psi(a) = chi(a) omega(a)^{-n}` on `1..=N`, `N = lcm(f, p)`, as p-adic
/// numbers (zero off the units), built from the character table and the
/// Teichmuller lift only.
pub fn twisted_values(chi: &DirichletCharacter, n: i64, p: u64, prec: i64) -> (u64, Vec<PadicNumber>) {
    let f = chi.modulus();
    let big_n = num_integer::lcm(f, p);
    let pol = PrecisionPolicy::with_target(prec);
    let mut vals = Vec::new();
    for a in 1..=big_n as i64 {
        let c = chi.eval_padic(a, p, &pol).expect("supported character");
        if c.is_zero() || a % p as i64 == 0 {
            vals.push(PadicNumber::zero(p, prec));
            continue;
        }
        let w = teichmuller(a, p, &pol).expect("unit");
        let wn = if n >= 0 {
            w.pow(n as u32).inv().expect("unit")
        } else {
            w.pow((-n) as u32)
        };
        vals.push(&c * &wn);
    }
    (big_n, vals)
}

/// `B_{n,psi}` for a character given by its values on `1..=N`, from the
/// generating function `sum_a psi(a) t e^{at}/(e^{Nt} - 1)`.
pub fn generalized_bernoulli_eq1(n: usize, big_n: u64, vals: &[PadicNumber], p: u64, prec: u32) -> PadicNumber {
    let mut acc = PadicNumber::zero(p, prec as i64);
    for (i, v) in vals.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let a = i as i64 + 1;
        let c = &eq1_coefficients(a, big_n as i64, n)[n];
        acc = &acc + &(v * &padic_of_rational(p, c, prec + 32));
    }
    acc
}

/// Exact `B_{n,chi}` for a real (order at most 2) character, on `1..=f`.
pub fn generalized_bernoulli_real(n: usize, chi: &DirichletCharacter) -> BigRational {
    let f = chi.modulus() as i64;
    let mut acc = BigRational::zero();
    for a in 1..=f {
        let c = chi.eval_complex(a);
        if c.norm() < 0.5 {
            continue;
        }
        let term = &eq1_coefficients(a, f, n)[n];
        if c.re > 0.0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    let s = if x.is_negative() { -1.0 } else { 1.0 };
    s * (x.abs().numer().to_f64().unwrap() / x.denom().to_f64().unwrap())
}
