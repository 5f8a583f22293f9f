//! Scalar special functions: double factorials, erf, modified Bessel I_p.

use std::f64::consts::{FRAC_2_SQRT_PI, LN_2, PI};

use super::SignedLogValue;
use crate::error::{Error, Result};

/// Scale `kappa = sqrt(pi) * ln 2` for which `tanh(kappa x)` has the same
/// integral over `[0, inf)` as `erf(x)`, minus 1 (the gap integrates to 0).
pub const TANH_SCALE: f64 = 1.228_571_389_427_776;

/// `ln(k!)` for `k >= 0`.
pub fn ln_factorial(k: u64) -> f64 {
    if k < 2 {
        0.0
    } else if k <= 20 {
        (2..=k).map(|i| i as f64).product::<f64>().ln()
    } else {
        libm::lgamma(k as f64 + 1.0)
    }
}

/// `ln(k!!)` for `k >= -1`, via `(2m)!! = 2^m m!` and
/// `(2m+1)!! = (2m+1)! / (2^m m!)`.
pub fn ln_double_factorial(k: i64) -> Result<f64> {
    if k < -1 {
        return Err(Error::invalid(format!(
            "double factorial undefined for k = {k}"
        )));
    }
    if k <= 1 {
        return Ok(0.0);
    }
    if k <= 30 {
        // exact in f64 (30!! < 2^53)
        let mut p = 1.0f64;
        let mut i = k;
        while i > 1 {
            p *= i as f64;
            i -= 2;
        }
        return Ok(p.ln());
    }
    let m = (k / 2) as u64;
    Ok(if k % 2 == 0 {
        m as f64 * LN_2 + ln_factorial(m)
    } else {
        ln_factorial(k as u64) - m as f64 * LN_2 - ln_factorial(m)
    })
}

/// `k!!` as a log-magnitude value. `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> Result<SignedLogValue> {
    ln_double_factorial(k).map(SignedLogValue::from_ln)
}

/// Exact `k!!` for small `k` (`k <= 33` fits in a u128 alongside `k!`).
pub fn double_factorial_exact(k: i64) -> Option<u128> {
    if k < -1 {
        return None;
    }
    let mut p: u128 = 1;
    let mut i = k;
    while i > 1 {
        p = p.checked_mul(i as u128)?;
        i -= 2;
    }
    Some(p)
}

/// Error function, absolute error below 1e-15 on the real line.
///
/// For `|x| < 2.5` it sums `erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1}
/// / (2n+1)!!`, whose terms are all positive; for larger `|x|` it evaluates
/// the Laplace continued fraction for `erfc` with the modified Lentz method.
/// Odd by construction.
pub fn erf_scalar(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let a = x.abs();
    let v = if a < 2.5 {
        let two_a2 = 2.0 * a * a;
        let mut term = a;
        let mut sum = a;
        let mut n = 0.0;
        loop {
            n += 1.0;
            term *= two_a2 / (2.0 * n + 1.0);
            sum += term;
            if term <= sum * 1e-17 {
                break;
            }
        }
        FRAC_2_SQRT_PI * (-a * a).exp() * sum
    } else if a < 6.0 {
        1.0 - erfc_continued_fraction(a)
    } else {
        // erfc(6) < 2.2e-17
        1.0
    };
    v.copysign(x)
}

/// `erfc(a) = e^{-a^2}/sqrt(pi) * 1/(a + (1/2)/(a + 1/(a + (3/2)/(a + ...))))`
fn erfc_continued_fraction(a: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = a;
    let mut c = a;
    let mut d = 0.0;
    for k in 1..500 {
        let num = 0.5 * k as f64;
        d = a + num * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = a + num / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-a * a).exp() / (PI.sqrt() * f)
}

/// Modified Bessel function of the first kind `I_p(x)` for `x >= 0`, from
/// the power series `sum_m (x/2)^{2m+p} / (m! (m+p)!)`. Every term is
/// positive, so the relative error stays near machine precision; the series
/// is used for all `x` (cost grows like `x`).
pub fn bessel_i(p: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if p == 0 { 1.0 } else { 0.0 };
    }
    if x.is_nan() || x < 0.0 {
        return f64::NAN;
    }
    let half = 0.5 * x;
    let q = half * half;
    let mut term = (f64::from(p) * half.ln() - ln_factorial(u64::from(p))).exp();
    let mut sum = term;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= q / (m * (m + f64::from(p)));
        sum += term;
        if term <= sum * 1e-17 && m > half {
            break;
        }
    }
    sum
}
