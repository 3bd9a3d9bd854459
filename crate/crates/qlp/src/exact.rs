//! Exact classical Bernoulli values, reported next to `h = 0` results.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `B_0, ..., B_n` with `B_1 = -1/2`, from `sum_{k<=m} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `B_n(num/den)` as a reduced fraction string.
pub fn classical_bernoulli_poly(n: usize, num: i64, den: i64) -> String {
    let b = bernoulli_numbers(n);
    let x = BigRational::new(BigInt::from(num), BigInt::from(den));
    let mut acc = BigRational::zero();
    let mut binom = BigInt::one();
    let mut xpow = BigRational::one();
    // sum_k C(n, k) B_{n-k} x^k
    for k in 0..=n {
        acc += BigRational::from_integer(binom.clone()) * &b[n - k] * &xpow;
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
        xpow *= &x;
    }
    acc.to_string()
}
