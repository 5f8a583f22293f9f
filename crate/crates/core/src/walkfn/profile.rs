use super::{SignedLogValue, WeightScheme};
use crate::error::{Error, Result};
use crate::spectral::EigenDecomposition;

/// Integers below this are recovered exactly from a spectral sum by rounding.
const EXACT_INTEGER_LIMIT: f64 = (1u64 << 50) as f64;
/// Relative size under which a cancelled spectral sum is treated as 0.
const CANCELLATION_TOL: f64 = 1e-10;

/// `sum_j w_j lambda_j^k` in signed-log arithmetic, where the caller knows
/// the true value is an integer (a count of closed walks). Small results are
/// rounded to that integer; cancellation far below the size of the summands
/// collapses to exactly 0.
pub fn integer_spectral_moment(values: &[f64], weights: &[f64], k: u32) -> SignedLogValue {
    let terms = values
        .iter()
        .zip(weights)
        .map(|(&l, &w)| SignedLogValue::from_f64(w) * SignedLogValue::from_f64(l).powi(k));
    let terms: Vec<SignedLogValue> = terms.collect();
    let scale = terms
        .iter()
        .map(|t| t.log_mag())
        .fold(f64::NEG_INFINITY, f64::max);
    let sum = SignedLogValue::sum_terms(terms.iter().copied());
    if sum.is_zero() || sum.log_mag() < scale + CANCELLATION_TOL.ln() {
        return SignedLogValue::ZERO;
    }
    match sum.to_finite() {
        Some(x) if x.abs() < EXACT_INTEGER_LIMIT => SignedLogValue::from_f64(x.round()),
        _ => sum,
    }
}

/// `tr(A^k)`, the number of closed walks of length `k`.
pub fn closed_walks(eig: &EigenDecomposition, k: u32) -> SignedLogValue {
    let ones = vec![1.0; eig.n()];
    integer_spectral_moment(eig.values(), &ones, k)
}

/// `(A^k)_pp`, closed walks of length `k` at node `p`.
pub fn closed_walks_at(eig: &EigenDecomposition, p: usize, k: u32) -> SignedLogValue {
    let weights: Vec<f64> = (0..eig.n()).map(|j| eig.component(j, p).powi(2)).collect();
    integer_spectral_moment(eig.values(), &weights, k)
}

/// `c_k tr(A^k)` for `k = 1..=k_max`, entirely in log arithmetic.
pub fn walk_decay_profile(
    eig: &EigenDecomposition,
    scheme: WeightScheme,
    k_max: u32,
) -> Result<Vec<SignedLogValue>> {
    if k_max < 1 {
        return Err(Error::invalid("k_max must be at least 1"));
    }
    scheme.validate()?;
    Ok((1..=k_max)
        .map(|k| scheme.coefficient(u64::from(k)) * closed_walks(eig, k))
        .collect())
}
