//! First-order Taylor jets `val + der * s`, with `s^2 = 0`.
//!
//! Pushing a jet `(s0, 1)` through a computation yields the value and the
//! `d/ds` derivative at `s0` in one pass.

use core::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SJet<T> {
    pub val: T,
    pub der: T,
}

impl<T> SJet<T> {
    pub fn new(val: T, der: T) -> Self {
        SJet { val, der }
    }
}

impl<T: Clone> SJet<T> {
    /// The jet of a constant: derivative zero.
    pub fn constant(val: T, zero: T) -> Self {
        SJet { val, der: zero }
    }

    /// The identity jet `s` at `s0`.
    pub fn variable(s0: T, one: T) -> Self {
        SJet { val: s0, der: one }
    }
}

impl<T> SJet<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    /// Apply a scalar function with known derivative: `f(a + a' s) =
    /// f(a) + f'(a) a' s`.
    pub fn chain(&self, f_val: T, f_der: T) -> Self {
        SJet {
            val: f_val,
            der: f_der * self.der.clone(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        SJet {
            val: self.val.clone() * c.clone(),
            der: self.der.clone() * c.clone(),
        }
    }
}

impl<T: Add<Output = T>> Add for SJet<T> {
    type Output = SJet<T>;
    fn add(self, rhs: Self) -> Self {
        SJet {
            val: self.val + rhs.val,
            der: self.der + rhs.der,
        }
    }
}

impl<T: Sub<Output = T>> Sub for SJet<T> {
    type Output = SJet<T>;
    fn sub(self, rhs: Self) -> Self {
        SJet {
            val: self.val - rhs.val,
            der: self.der - rhs.der,
        }
    }
}

impl<T> Mul for SJet<T>
where
    T: Clone + Add<Output = T> + Mul<Output = T>,
{
    type Output = SJet<T>;
    fn mul(self, rhs: Self) -> Self {
        SJet {
            der: self.der * rhs.val.clone() + self.val.clone() * rhs.der,
            val: self.val * rhs.val,
        }
    }
}

impl<T: Neg<Output = T>> Neg for SJet<T> {
    type Output = SJet<T>;
    fn neg(self) -> Self {
        SJet {
            val: -self.val,
            der: -self.der,
        }
    }
}
