//! q-Bernoulli numbers `B_{n,q}^{(h)}`, their polynomials, and the
//! generalized numbers attached to a Dirichlet character, over any
//! [`ValueDomain`].
//!
//! The numbers come from the recursion
//! `(q^h - 1) B_n = [n = 1] - q^h sum_{k<n} C(n,k) B_k` started at
//! `B_0 = h log q / (q^h - 1)`. For `h = 0` that recursion is `0 = 0`, and
//! the classical numbers are returned instead.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::character::DirichletCharacter;
use crate::domain::{QParam, ValueDomain};
use crate::error::{Error, Result};
use crate::padic::vp_factorial;

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for k in 1..n {
        row[k] = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
    }
    row
}

/// Extends `bs` so it holds `B_{0..=n_max, q}^{(h)}`.
fn extend_numbers<D: ValueDomain>(
    bs: &mut Vec<D::Elem>,
    n_max: usize,
    q: &QParam<D::Elem>,
    h: i64,
    d: &D,
) -> Result<()> {
    if h == 0 {
        if bs.is_empty() {
            bs.push(d.one());
        }
        while bs.len() <= n_max {
            let n = bs.len();
            let row = binomial_row(n + 1);
            let mut acc = d.zero();
            for (k, b) in bs.iter().enumerate() {
                acc = d.add(&acc, &d.mul(&d.from_big(&row[k]), b));
            }
            let bn = d.div(&d.neg(&acc), &d.from_i64(n as i64 + 1))?;
            bs.push(bn);
        }
        return Ok(());
    }
    let qh = q.power(d, h)?;
    let den = d.sub(&qh.value, &d.one());
    if d.is_negligible(&den) {
        return Err(Error::InvalidQ("q^h = 1 with h != 0"));
    }
    if bs.is_empty() {
        bs.push(d.div(&qh.log, &den)?);
    }
    while bs.len() <= n_max {
        let n = bs.len();
        let row = binomial_row(n);
        let mut acc = d.zero();
        for (k, b) in bs.iter().enumerate() {
            acc = d.add(&acc, &d.mul(&d.from_big(&row[k]), b));
        }
        let delta = if n == 1 { d.one() } else { d.zero() };
        let num = d.sub(&delta, &d.mul(&qh.value, &acc));
        bs.push(d.div(&num, &den)?);
    }
    Ok(())
}

/// `B_{0,q}^{(h)}, ..., B_{n_max,q}^{(h)}`.
pub fn qbernoulli_numbers<D: ValueDomain>(
    n_max: usize,
    q: &QParam<D::Elem>,
    h: i64,
    d: &D,
) -> Result<Vec<D::Elem>> {
    let mut bs = Vec::with_capacity(n_max + 1);
    extend_numbers(&mut bs, n_max, q, h, d)?;
    Ok(bs)
}

pub fn qbernoulli_number<D: ValueDomain>(n: usize, q: &QParam<D::Elem>, h: i64, d: &D) -> Result<D::Elem> {
    let mut bs = qbernoulli_numbers(n, q, h, d)?;
    Ok(bs.swap_remove(n))
}

/// `sum_k C(n,k) b_k x^{n-k}` for a sequence `b`.
pub fn binomial_transform<D: ValueDomain>(bs: &[D::Elem], n: usize, x: &D::Elem, d: &D) -> D::Elem {
    let row = binomial_row(n);
    let mut acc = d.zero();
    // Horner in x
    for k in 0..=n {
        acc = d.add(&d.mul(&acc, x), &d.mul(&d.from_big(&row[k]), &bs[k]));
    }
    acc
}

/// `B_{n,q}^{(h)}(x)`.
pub fn qbernoulli_poly<D: ValueDomain>(
    n: usize,
    q: &QParam<D::Elem>,
    h: i64,
    x: &D::Elem,
    d: &D,
) -> Result<D::Elem> {
    let bs = qbernoulli_numbers(n, q, h, d)?;
    Ok(binomial_transform(&bs, n, x, d))
}

/// `B_{n,q,chi}^{(h)}(x)` through the distribution relation
/// `f^{n-1} sum_i chi(i) q^{hi} B_{n,q^f}^{(h)}((i + x)/f)`, expanded so
/// that only one division by `f` occurs.
///
/// `base` must hold `B_{0..=n, q^f}^{(h)}`; `chi_vals` the character on
/// `0..f`.
pub fn generalized_from_parts<D: ValueDomain>(
    n: usize,
    q: &QParam<D::Elem>,
    h: i64,
    chi_vals: &[D::Elem],
    base: &[D::Elem],
    x: &D::Elem,
    d: &D,
) -> Result<D::Elem> {
    let f = chi_vals.len();
    let fe = d.from_i64(f as i64);
    // power sums S_j = sum_i chi(i) q^{hi} (i + x)^j, j = 0..=n
    let mut sums = vec![d.zero(); n + 1];
    let qh = q.power(d, h)?;
    let mut weight_q = d.one();
    for (i, c) in chi_vals.iter().enumerate() {
        if !d.is_negligible(c) {
            let w = d.mul(c, &weight_q);
            let y = d.add(&d.from_i64(i as i64), x);
            let mut yp = w;
            for s in sums.iter_mut() {
                *s = d.add(s, &yp);
                yp = d.mul(&yp, &y);
            }
        }
        weight_q = d.mul(&weight_q, &qh.value);
    }
    let row = binomial_row(n);
    let head = d.div(&d.mul(&base[0], &sums[n]), &fe)?;
    let mut acc = head;
    let mut fk = d.one();
    for k in 1..=n {
        let term = d.mul(&d.mul(&d.from_big(&row[k]), &fk), &d.mul(&base[k], &sums[n - k]));
        acc = d.add(&acc, &term);
        fk = d.mul(&fk, &fe);
    }
    Ok(acc)
}

/// `B_{n,q,chi}^{(h)}(x)` with period the modulus of `chi`.
pub fn generalized_qbernoulli<D: ValueDomain>(
    n: usize,
    q: &QParam<D::Elem>,
    h: i64,
    chi: &DirichletCharacter,
    x: &D::Elem,
    d: &D,
) -> Result<D::Elem> {
    let f = chi.modulus() as i64;
    let chi_vals = d.chi_values(chi)?;
    let base = qbernoulli_numbers(n, &q.power(d, f)?, h, d)?;
    generalized_from_parts(n, q, h, &chi_vals, &base, x, d)
}

/// Digits of head-room needed to get `B_{0..=n_max}` to a target when each
/// step divides by an element of valuation `v_den`.
pub fn padic_headroom(p: u64, n_max: usize, v_den: i64) -> i64 {
    (n_max as i64 + 2) * v_den + vp_factorial(p, n_max as u64 + 1) as i64 + 4
}

/// Memoized `B_{n, q^k}^{(h)}` for one `q`, keyed by `(h, k)`. Entries are
/// extended in place, so a longer request reuses the shorter prefix.
#[derive(Debug, Clone)]
pub struct QBernoulliCache<E> {
    q: QParam<E>,
    entries: BTreeMap<(i64, i64), Vec<E>>,
}

impl<E: Clone + core::fmt::Debug> QBernoulliCache<E> {
    pub fn new(q: QParam<E>) -> Self {
        QBernoulliCache {
            q,
            entries: BTreeMap::new(),
        }
    }

    pub fn q(&self) -> &QParam<E> {
        &self.q
    }

    /// `B_{0..=n_max, q^k}^{(h)}`.
    pub fn numbers<D: ValueDomain<Elem = E>>(&mut self, d: &D, h: i64, k: i64, n_max: usize) -> Result<&[E]> {
        let base = self.q.power(d, k)?;
        let entry = self.entries.entry((h, k)).or_default();
        if entry.len() <= n_max {
            extend_numbers(entry, n_max, &base, h, d)?;
        }
        Ok(&entry[..=n_max])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
