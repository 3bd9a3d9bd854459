//! Parsing of the textual job parameters.

use qlp_core::DirichletCharacter;

use crate::job::JobError;

/// A rational `num/den` in lowest terms with `den > 0`, or an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn integer(n: i64) -> Self {
        Ratio { num: n, den: 1 }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

pub fn parse_ratio(name: &str, text: &str) -> Result<Ratio, JobError> {
    let bad = || JobError::usage(format!("{name}: expected an integer or num/den, got {text:?}"));
    let (num, den) = match text.trim().split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i64>().map_err(|_| bad())?,
            d.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (text.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(JobError::usage(format!("{name}: zero denominator")));
    }
    let g = gcd(num, den).max(1);
    let sign = if den < 0 { -1 } else { 1 };
    Ok(Ratio {
        num: sign * num / g,
        den: sign * den / g,
    })
}

pub fn parse_decimal(name: &str, text: &str) -> Result<f64, JobError> {
    let t = text.trim();
    let v = match t.split_once('/') {
        Some(_) => parse_ratio(name, t)?.as_f64(),
        None => t
            .parse::<f64>()
            .map_err(|_| JobError::usage(format!("{name}: expected a decimal number, got {text:?}")))?,
    };
    if !v.is_finite() {
        return Err(JobError::usage(format!("{name}: must be finite")));
    }
    Ok(v)
}

pub fn parse_character(text: Option<&str>) -> Result<DirichletCharacter, JobError> {
    match text {
        None => Ok(DirichletCharacter::trivial()),
        Some(t) => t.parse().map_err(JobError::from),
    }
}

/// One swept parameter and its values, from `name=v1,v2,...` or, for
/// integers, `name=a..b` (inclusive).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub param: GridParam,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridParam {
    N,
    S,
    T,
}

impl GridParam {
    pub fn name(self) -> &'static str {
        match self {
            GridParam::N => "n",
            GridParam::S => "s",
            GridParam::T => "t",
        }
    }
}

pub fn parse_grid(text: &str) -> Result<Grid, JobError> {
    let (name, rest) = text
        .split_once('=')
        .ok_or_else(|| JobError::usage("grid: expected name=values, e.g. n=0..8".to_string()))?;
    let param = match name.trim() {
        "n" => GridParam::N,
        "s" => GridParam::S,
        "t" => GridParam::T,
        other => return Err(JobError::usage(format!("grid: unknown parameter {other:?} (use n, s or t)"))),
    };
    let rest = rest.trim();
    let values = if rest.is_empty() {
        Vec::new()
    } else if let Some((a, b)) = rest.split_once("..") {
        let lo = a
            .trim()
            .parse::<i64>()
            .map_err(|_| JobError::usage(format!("grid: bad range start {a:?}")))?;
        let hi = b
            .trim()
            .parse::<i64>()
            .map_err(|_| JobError::usage(format!("grid: bad range end {b:?}")))?;
        (lo..=hi).map(|v| v.to_string()).collect()
    } else {
        rest.split(',').map(|v| v.trim().to_string()).collect()
    };
    Ok(Grid { param, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios() {
        assert_eq!(parse_ratio("q", "6/1").unwrap(), Ratio { num: 6, den: 1 });
        assert_eq!(parse_ratio("q", "-4/-6").unwrap(), Ratio { num: 2, den: 3 });
        assert_eq!(parse_ratio("q", "7").unwrap(), Ratio::integer(7));
        assert!(parse_ratio("q", "1/0").is_err());
        assert!(parse_ratio("q", "0.5").is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("q", "0.25").unwrap(), 0.25);
        assert_eq!(parse_decimal("q", "1/4").unwrap(), 0.25);
        assert!(parse_decimal("q", "nan").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("n=0..3").unwrap();
        assert_eq!(g.param, GridParam::N);
        assert_eq!(g.values, ["0", "1", "2", "3"]);
        let g = parse_grid("s=2.5, 3").unwrap();
        assert_eq!(g.values, ["2.5", "3"]);
        assert!(parse_grid("n=").unwrap().values.is_empty());
        assert!(parse_grid("k=1").is_err());
    }
}
