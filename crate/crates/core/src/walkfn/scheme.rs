use std::fmt;
use std::str::FromStr;

use super::special::{ln_double_factorial, ln_factorial};
use super::SignedLogValue;
use crate::error::{Error, Result};

/// How a walk of length `k` is weighted: `c_k` in `sum_k c_k A^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightScheme {
    /// `1/k!`, the matrix exponential.
    Factorial,
    /// `1/k!!`.
    DoubleFactorial,
    /// `alpha^k`, the Katz resolvent for `alpha < 1/lambda_1`.
    Geometric(f64),
    /// `1/(k-t)!` for `k >= t`; walks shorter than `t` get weight 0.
    ShiftedFactorial(u32),
}

impl WeightScheme {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightScheme::Geometric(a) if !(a.is_finite() && a > 0.0) => Err(Error::invalid(
                format!("geometric weight needs a finite alpha > 0, got {a}"),
            )),
            _ => Ok(()),
        }
    }

    /// `ln c_k`, or `None` where `c_k = 0`.
    pub fn ln_coefficient(&self, k: u64) -> Option<f64> {
        match *self {
            WeightScheme::Factorial => Some(-ln_factorial(k)),
            WeightScheme::DoubleFactorial => Some(-ln_double_factorial(k as i64).expect("k >= 0")),
            WeightScheme::Geometric(a) => Some(k as f64 * a.ln()),
            WeightScheme::ShiftedFactorial(t) => {
                k.checked_sub(u64::from(t)).map(|d| -ln_factorial(d))
            }
        }
    }

    pub fn coefficient(&self, k: u64) -> SignedLogValue {
        self.ln_coefficient(k)
            .map_or(SignedLogValue::ZERO, SignedLogValue::from_ln)
    }

    /// Short name used in tables.
    pub fn tag(&self) -> String {
        match self {
            WeightScheme::Factorial => "exp".into(),
            WeightScheme::DoubleFactorial => "df".into(),
            WeightScheme::Geometric(a) => format!("geo:{a}"),
            WeightScheme::ShiftedFactorial(t) => format!("shift:{t}"),
        }
    }
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for WeightScheme {
    type Err = Error;

    /// `exp` / `factorial`, `df` / `double-factorial`, `geo:<alpha>` /
    /// `katz:<alpha>`, `shift:<t>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("unknown weight scheme {s:?}"));
        let scheme = match s.split_once(':') {
            None => match s {
                "exp" | "factorial" => WeightScheme::Factorial,
                "df" | "double-factorial" => WeightScheme::DoubleFactorial,
                _ => return Err(bad()),
            },
            Some(("geo" | "katz", a)) => WeightScheme::Geometric(a.parse().map_err(|_| bad())?),
            Some(("shift", t)) => WeightScheme::ShiftedFactorial(t.parse().map_err(|_| bad())?),
            Some(_) => return Err(bad()),
        };
        scheme.validate()?;
        Ok(scheme)
    }
}
