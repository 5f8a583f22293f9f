//! Brute-force truncated power series: the ground truth every closed form
//! is checked against.

use nalgebra::DMatrix;

use super::WeightScheme;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct SeriesSum {
    /// `sum_{k=0}^{K} c_k beta^k A^k`.
    pub matrix: DMatrix<f64>,
    /// Max-abs entry of the final term `c_K beta^K A^K`; a truncation gauge.
    pub last_term_max_abs: f64,
}

/// Sums `c_k beta^k A^k` for `k = 0..=terms` by repeated multiplication.
///
/// Powers of `beta A` are carried as a max-abs normalised matrix times a
/// log scale, so intermediate powers never overflow even when the weighted
/// terms are modest. Entries are accumulated with Kahan compensation.
pub fn series_oracle(
    g: &Graph,
    scheme: WeightScheme,
    beta: f64,
    terms: usize,
) -> Result<SeriesSum> {
    scheme.validate()?;
    if !beta.is_finite() {
        return Err(Error::invalid(format!("beta must be finite, got {beta}")));
    }
    let n = g.n();
    let step = g.adjacency_matrix() * beta;
    let mut power = DMatrix::<f64>::identity(n, n);
    let mut log_scale = 0.0f64;
    let mut sum = DMatrix::<f64>::zeros(n, n);
    let mut comp = DMatrix::<f64>::zeros(n, n);
    let mut last = 0.0;

    for k in 0..=terms {
        if k > 0 {
            power = &step * &power;
            let s = power.amax();
            if s == 0.0 {
                last = 0.0;
                break;
            }
            power /= s;
            log_scale += s.ln();
        }
        let Some(lc) = scheme.ln_coefficient(k as u64) else {
            last = 0.0;
            continue;
        };
        let factor = (log_scale + lc).exp();
        if !factor.is_finite() {
            return Err(Error::Overflow {
                what: format!("series term k = {k}"),
            });
        }
        last = factor; // power is normalised to max-abs 1
        for ((acc, c), &p) in sum.iter_mut().zip(comp.iter_mut()).zip(power.iter()) {
            let y = p * factor - *c;
            let t = *acc + y;
            *c = (t - *acc) - y;
            *acc = t;
        }
    }
    if sum.iter().any(|x| !x.is_finite()) {
        return Err(Error::Overflow {
            what: "series partial sum".into(),
        });
    }
    Ok(SeriesSum {
        matrix: sum,
        last_term_max_abs: last,
    })
}
