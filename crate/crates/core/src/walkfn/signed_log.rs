use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

/// A real number stored as `sign * exp(log_mag)`.
///
/// Arithmetic never overflows: index values such as `exp(lambda^2 / 2)` for a
/// network with `lambda_1 = 60` are carried exactly in the exponent. For a
/// zero value `log_mag` is `-inf`.
#[derive(Debug, Clone, Copy)]
pub struct SignedLogValue {
    sign: i8,
    log_mag: f64,
}

impl SignedLogValue {
    pub const ZERO: Self = SignedLogValue {
        sign: 0,
        log_mag: f64::NEG_INFINITY,
    };
    pub const ONE: Self = SignedLogValue {
        sign: 1,
        log_mag: 0.0,
    };

    /// `sign` is clamped to -1, 0, +1; a zero sign ignores `log_mag`.
    pub fn new(sign: i8, log_mag: f64) -> Self {
        if sign == 0 || log_mag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            SignedLogValue {
                sign: sign.signum(),
                log_mag,
            }
        }
    }

    /// The positive value `exp(log_mag)`.
    pub fn from_ln(log_mag: f64) -> Self {
        Self::new(1, log_mag)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            SignedLogValue {
                sign: if x > 0.0 { 1 } else { -1 },
                log_mag: x.abs().ln(),
            }
        }
    }

    /// May be infinite when the magnitude exceeds `f64::MAX`.
    pub fn to_f64(self) -> f64 {
        f64::from(self.sign) * self.log_mag.exp()
    }

    /// `Some` only when the value is representable as a finite `f64`.
    pub fn to_finite(self) -> Option<f64> {
        let x = self.to_f64();
        x.is_finite().then_some(x)
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn log_mag(self) -> f64 {
        self.log_mag
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// `log10 |x|`.
    pub fn log10_mag(self) -> f64 {
        self.log_mag / std::f64::consts::LN_10
    }

    /// Natural log of a positive value.
    pub fn ln(self) -> Option<f64> {
        (self.sign > 0).then_some(self.log_mag)
    }

    pub fn abs(self) -> Self {
        Self::new(self.sign.abs(), self.log_mag)
    }

    pub fn powi(self, k: u32) -> Self {
        if k == 0 {
            return Self::ONE;
        }
        let sign = if self.sign < 0 && k % 2 == 1 {
            -1
        } else {
            self.sign.abs()
        };
        Self::new(sign, self.log_mag * f64::from(k))
    }

    /// Signed log-sum-exp over any number of terms. The largest magnitude is
    /// factored out before summing, so only relative cancellation is lost.
    pub fn sum_terms<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        let terms: Vec<Self> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        let Some(max) = terms.iter().map(|t| t.log_mag).reduce(f64::max) else {
            return Self::ZERO;
        };
        if max == f64::INFINITY {
            let s: i32 = terms
                .iter()
                .filter(|t| t.log_mag == f64::INFINITY)
                .map(|t| i32::from(t.sign))
                .sum();
            return Self::new(s.signum() as i8, f64::INFINITY);
        }
        // compensated sum of the rescaled terms
        let mut acc = 0.0f64;
        let mut comp = 0.0f64;
        for t in &terms {
            let y = f64::from(t.sign) * (t.log_mag - max).exp() - comp;
            let s = acc + y;
            comp = (s - acc) - y;
            acc = s;
        }
        if acc == 0.0 {
            Self::ZERO
        } else {
            Self::new(if acc > 0.0 { 1 } else { -1 }, max + acc.abs().ln())
        }
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Ordering::Equal,
                1 => self.log_mag.total_cmp(&other.log_mag),
                _ => other.log_mag.total_cmp(&self.log_mag),
            },
            ord => ord,
        }
    }
}

impl Default for SignedLogValue {
    fn default() -> Self {
        Self::ZERO
    }
}

impl PartialEq for SignedLogValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for SignedLogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.log_mag.is_nan() || other.log_mag.is_nan() {
            return None;
        }
        Some(self.cmp_value(other))
    }
}

impl Add for SignedLogValue {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.log_mag >= rhs.log_mag {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if big.log_mag == f64::INFINITY {
            return if small.log_mag == f64::INFINITY && small.sign != big.sign {
                Self::new(1, f64::NAN)
            } else {
                big
            };
        }
        let d = small.log_mag - big.log_mag;
        if big.sign == small.sign {
            Self::new(big.sign, big.log_mag + d.exp().ln_1p())
        } else if d == 0.0 {
            Self::ZERO
        } else {
            Self::new(big.sign, big.log_mag + (-d.exp_m1()).ln())
        }
    }
}

impl Neg for SignedLogValue {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.sign, self.log_mag)
    }
}

impl Sub for SignedLogValue {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for SignedLogValue {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(self.sign * rhs.sign, self.log_mag + rhs.log_mag)
    }
}

impl Sum for SignedLogValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        Self::sum_terms(iter)
    }
}

impl fmt::Display for SignedLogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_finite() {
            Some(x) if x != 0.0 || self.is_zero() => write!(f, "{x}"),
            _ => {
                let s = if self.sign < 0 { "-" } else { "" };
                write!(f, "{s}exp({})", self.log_mag)
            }
        }
    }
}
