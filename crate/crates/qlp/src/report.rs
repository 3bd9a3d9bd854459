//! The JSON report written for every job.

use num_complex::Complex64;
use qlp_core::PadicNumber;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// A p-adic number as `p^valuation * sum digits[i] p^i + O(p^precision)`.
/// Zero has `valuation: null` and no digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicValue {
    pub prime: u64,
    pub valuation: Option<i64>,
    pub digits: Vec<u64>,
    pub precision: i64,
}

impl From<&PadicNumber> for PadicValue {
    fn from(x: &PadicNumber) -> Self {
        PadicValue {
            prime: x.prime(),
            valuation: x.valuation(),
            digits: if x.is_zero() { Vec::new() } else { x.digits() },
            precision: x.abs_prec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Padic(PadicValue),
    Complex(ComplexValue),
}

impl From<&PadicNumber> for Value {
    fn from(x: &PadicNumber) -> Self {
        Value::Padic(x.into())
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex(z.into())
    }
}

/// Discrepancy between two values: an error valuation for p-adic results,
/// an absolute error for complex ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Discrepancy {
    ErrorValuation(i64),
    AbsError(f64),
}

/// One identity checked by a verify suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub identity: String,
    pub parameters: serde_json::Value,
    pub lhs: Value,
    pub rhs: Value,
    #[serde(flatten)]
    pub error: Discrepancy,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
    pub metadata: Metadata,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.as_ref().is_none_or(|c| c.iter().all(|c| c.pass))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
