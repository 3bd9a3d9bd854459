//! Parameter sweeps written as CSV.

use std::io::Write;

use crate::job::{compute, Command, JobError, JobSpec, LMethod};
use crate::parse::{Grid, GridParam};
use crate::report::{Discrepancy, Value};

/// Which result columns a sweep produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Complex,
    Padic,
}

fn shape(spec: &JobSpec) -> Shape {
    match spec.command {
        Command::Lp | Command::Dlp | Command::GammaQ => Shape::Padic,
        Command::Qbern | Command::GenQbern if spec.p.is_some() => Shape::Padic,
        _ => Shape::Complex,
    }
}

fn has_reference(spec: &JobSpec) -> bool {
    match spec.command {
        Command::Lp | Command::Dlp => true,
        Command::Lfun => spec.method == Some(LMethod::Continued),
        _ => false,
    }
}

pub fn header(spec: &JobSpec, grid: &Grid) -> Vec<String> {
    let mut h = vec![grid.param.name().to_string()];
    match shape(spec) {
        Shape::Complex => h.extend(["re", "im"].map(String::from)),
        Shape::Padic => h.extend(["valuation", "digits", "precision"].map(String::from)),
    }
    if has_reference(spec) {
        h.push("error".to_string());
    }
    h.push("status".to_string());
    h
}

fn discrepancy(a: &Value, b: &Value) -> Option<Discrepancy> {
    match (a, b) {
        (Value::Complex(x), Value::Complex(y)) => Some(Discrepancy::AbsError((x.re - y.re).hypot(x.im - y.im))),
        (Value::Padic(x), Value::Padic(y)) => {
            let prec = x.precision.min(y.precision);
            let first_diff = |v: &crate::report::PadicValue, i: i64| -> u64 {
                match v.valuation {
                    Some(val) if i >= val => v.digits.get((i - val) as usize).copied().unwrap_or(0),
                    _ => 0,
                }
            };
            let lo = [x.valuation, y.valuation].iter().flatten().copied().min().unwrap_or(prec);
            let v = (lo..prec).find(|&i| first_diff(x, i) != first_diff(y, i)).unwrap_or(prec);
            Some(Discrepancy::ErrorValuation(v))
        }
        _ => None,
    }
}

fn with_param(spec: &JobSpec, param: GridParam, value: &str) -> Result<JobSpec, JobError> {
    let mut s = spec.clone();
    match param {
        GridParam::N => {
            s.n = Some(
                value
                    .parse()
                    .map_err(|_| JobError::usage(format!("grid: n must be a nonnegative integer, got {value:?}")))?,
            )
        }
        GridParam::S => s.s = Some(value.to_string()),
        GridParam::T => s.t = Some(value.to_string()),
    }
    Ok(s)
}

/// One CSV row per grid value. A row whose computation fails carries the
/// error in its status column and leaves the value columns empty.
pub fn rows(spec: &JobSpec, grid: &Grid) -> Result<Vec<Vec<String>>, JobError> {
    if spec.command == Command::Verify {
        return Err(JobError::usage("verify does not take a grid".to_string()));
    }
    let width = header(spec, grid).len();
    let with_error = has_reference(spec);
    let mut out = Vec::with_capacity(grid.values.len());
    for v in &grid.values {
        let job = with_param(spec, grid.param, v)?;
        let mut row = vec![v.clone()];
        match compute(&job) {
            Ok(c) => {
                match &c.value {
                    Value::Complex(z) => row.extend([z.re.to_string(), z.im.to_string()]),
                    Value::Padic(x) => {
                        let digits = x.digits.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                        row.extend([
                            x.valuation.map_or_else(|| "inf".to_string(), |v| v.to_string()),
                            digits,
                            x.precision.to_string(),
                        ]);
                    }
                }
                if with_error {
                    row.push(match c.reference.as_ref().and_then(|r| discrepancy(&c.value, r)) {
                        Some(Discrepancy::AbsError(e)) => format!("{e:e}"),
                        Some(Discrepancy::ErrorValuation(e)) => e.to_string(),
                        None => String::new(),
                    });
                }
                row.push("ok".to_string());
            }
            Err(JobError::Usage(m)) => return Err(JobError::Usage(m)),
            Err(e) => {
                row.resize(width - 1, String::new());
                row.push(format!("error: {e}"));
            }
        }
        out.push(row);
    }
    Ok(out)
}

pub fn write_csv<W: Write>(spec: &JobSpec, grid: &Grid, sink: W) -> Result<(), Box<dyn std::error::Error>> {
    let table = rows(spec, grid)?;
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(header(spec, grid))?;
    for r in table {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}
