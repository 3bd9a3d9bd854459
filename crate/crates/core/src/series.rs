//! Truncated complex power series and the generating-function route to
//! `B_{n,q,chi}^{(h)}(x)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use crate::character::DirichletCharacter;
use crate::error::{Error, Result};

/// `sum_k c_k t^k mod t^len`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<Complex64>,
}

impl Series {
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        Series { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        Series {
            coeffs: vec![Complex64::zero(); len],
        }
    }

    /// `exp(c t)`.
    pub fn exp_linear(c: Complex64, len: usize) -> Self {
        let mut coeffs = Vec::with_capacity(len);
        let mut term = Complex64::new(1.0, 0.0);
        for k in 0..len {
            coeffs.push(term);
            term = term * c / (k as f64 + 1.0);
        }
        Series { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.len().min(o.len());
        Series {
            coeffs: (0..len).map(|k| self.coeffs[k] + o.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let len = self.len().min(o.len());
        let mut out = vec![Complex64::zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            for (j, b) in o.coeffs.iter().take(len - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }

    /// `self / o`, needing a nonzero constant term in `o`.
    pub fn div(&self, o: &Self) -> Result<Self> {
        let len = self.len().min(o.len());
        let c0 = o.coeffs.first().copied().unwrap_or_default();
        if c0.norm() == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let mut out: Vec<Complex64> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = self.coeffs[n];
            for k in 1..=n {
                acc -= o.coeffs[k] * out[n - k];
            }
            out.push(acc / c0);
        }
        Ok(Series { coeffs: out })
    }

    /// Drops the constant term and shifts down (division by `t`).
    pub fn shift_down(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().skip(1).copied().collect(),
        }
    }
}

/// `B_{0..=n_max, q, chi}^{(h)}(x)` read off
/// `(h log q + t) sum_{i<f} chi(i) q^{hi} e^{(i+x)t} / (q^{hf} e^{ft} - 1)`
/// as `n! [t^n]`. The series are truncated to `t_terms` coefficients.
pub fn gf_coefficients(
    q: Complex64,
    h: i64,
    chi: &DirichletCharacter,
    x: Complex64,
    n_max: usize,
    t_terms: usize,
) -> Result<Vec<Complex64>> {
    if t_terms <= n_max + 1 {
        return Err(Error::InvalidArgument("t_terms must exceed n_max + 1"));
    }
    if !(q.norm() > 0.0 && q.norm() < 1.0) {
        return Err(Error::InvalidQ("need 0 < |q| < 1"));
    }
    let f = chi.modulus() as i64;
    let log_q = q.ln();
    let len = t_terms + 1;
    let mut numer = Series::zero(len);
    for i in 0..f {
        let c = chi.eval_complex(i);
        if c.is_zero() {
            continue;
        }
        let w = c * (log_q * (h * i) as f64).exp();
        numer = numer.add(&Series::exp_linear(Complex64::new(i as f64, 0.0) + x, len).scale(w));
    }
    let e_ft = Series::exp_linear(Complex64::new(f as f64, 0.0), len);
    let gen = if h == 0 {
        // t / (e^{ft} - 1): cancel the common factor t
        let mut den = e_ft;
        den.coeffs[0] -= Complex64::new(1.0, 0.0);
        numer.div(&den.shift_down())?
    } else {
        let qhf = (log_q * (h * f) as f64).exp();
        let mut den = e_ft.scale(qhf);
        den.coeffs[0] -= Complex64::new(1.0, 0.0);
        let mut lin = Series::zero(len);
        lin.coeffs[0] = log_q * h as f64;
        lin.coeffs[1] = Complex64::new(1.0, 0.0);
        lin.mul(&numer).div(&den)?
    };
    let mut fact = 1.0;
    Ok((0..=n_max)
        .map(|n| {
            if n > 0 {
                fact *= n as f64;
            }
            gen.coeffs[n] * fact
        })
        .collect())
}
