//! Matrix functions of the adjacency matrix, evaluated spectrally as
//! `V diag(f(lambda)) V^T`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DMatrix;

use super::special::{erf_scalar, TANH_SCALE};
use super::SignedLogValue;
use crate::error::{Error, Result};
use crate::spectral::EigenDecomposition;

/// Which odd part is used in the double-factorial function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DfForm {
    /// `tanh(kappa x / sqrt 2)`, the computational definition.
    #[default]
    Tanh,
    /// `erf(x / sqrt 2)`, the exact value of `sum_k x^k / k!!`.
    Exact,
}

/// `sqrt(pi/2) * odd(x) + 1`, where `odd` is erf or the tanh surrogate.
pub fn df_bracket(x: f64, form: DfForm) -> f64 {
    let odd = match form {
        DfForm::Exact => erf_scalar(x * FRAC_1_SQRT_2),
        DfForm::Tanh => (TANH_SCALE * x * FRAC_1_SQRT_2).tanh(),
    };
    (0.5 * PI).sqrt() * odd + 1.0
}

/// Scalar double-factorial function `(sqrt(pi/2) odd(x) + 1) exp(x^2 / 2)`
/// in signed-log form.
pub fn df_scalar_log(x: f64, form: DfForm) -> SignedLogValue {
    let b = df_bracket(x, form);
    if b == 0.0 {
        return SignedLogValue::ZERO;
    }
    SignedLogValue::new(if b > 0.0 { 1 } else { -1 }, b.abs().ln() + 0.5 * x * x)
}

pub fn df_scalar(x: f64, form: DfForm) -> f64 {
    df_bracket(x, form) * (0.5 * x * x).exp()
}

fn finite(m: DMatrix<f64>, what: &str) -> Result<DMatrix<f64>> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(m)
    } else {
        Err(Error::Overflow { what: what.into() })
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("beta must be finite, got {beta}")))
    }
}

/// `exp(beta A)`.
pub fn matrix_exp(eig: &EigenDecomposition, beta: f64) -> Result<DMatrix<f64>> {
    check_beta(beta)?;
    finite(eig.reconstruct_with(|l| (beta * l).exp()), "exp(beta A)")
}

/// `sum_k beta^k A^k / k!! = (1/2)[sqrt(2 pi) erf(beta A / sqrt 2) + 2I] exp(beta^2 A^2 / 2)`.
pub fn df_matrix_exact(eig: &EigenDecomposition, beta: f64) -> Result<DMatrix<f64>> {
    df_matrix(eig, beta, DfForm::Exact)
}

/// The tanh surrogate of [`df_matrix_exact`], with `erf(y)` replaced by
/// `tanh(kappa y)`.
pub fn df_matrix_tanh(eig: &EigenDecomposition, beta: f64) -> Result<DMatrix<f64>> {
    df_matrix(eig, beta, DfForm::Tanh)
}

pub fn df_matrix(eig: &EigenDecomposition, beta: f64, form: DfForm) -> Result<DMatrix<f64>> {
    check_beta(beta)?;
    finite(
        eig.reconstruct_with(|l| df_scalar(beta * l, form)),
        "double-factorial matrix function",
    )
}

/// `(I - alpha A)^{-1}`, defined for `0 < alpha < 1/lambda_1`.
pub fn katz_resolvent(eig: &EigenDecomposition, alpha: f64) -> Result<DMatrix<f64>> {
    let radius = eig.spectral_radius();
    if !(alpha > 0.0 && alpha * radius < 1.0 && alpha.is_finite()) {
        return Err(Error::Divergence(format!(
            "Katz series needs 0 < alpha < 1/lambda_1 = {}, got alpha = {alpha}",
            1.0 / radius
        )));
    }
    finite(
        eig.reconstruct_with(|l| 1.0 / (1.0 - alpha * l)),
        "Katz resolvent",
    )
}

/// `sum_{k>=t} A^k / (k-t)! = A^t exp(A)`, the closed form of the
/// shifted-factorial weights (walks shorter than `t` contribute 0).
pub fn shifted_factorial_matrix(eig: &EigenDecomposition, t: u32) -> Result<DMatrix<f64>> {
    let t = t as i32;
    finite(
        eig.reconstruct_with(|l| l.powi(t) * l.exp()),
        "shifted-factorial matrix function",
    )
}

/// `A^t (I + A e^A - e^A)`, an alternative closed form given for the
/// shifted-factorial weights. It is not the sum of `A^k/(k-t)!`: its series
/// has coefficients `(k-t-1)/(k-t)!` for `k >= t + 2`.
pub fn shifted_factorial_alt_form(eig: &EigenDecomposition, t: u32) -> Result<DMatrix<f64>> {
    let t = t as i32;
    finite(
        eig.reconstruct_with(|l| l.powi(t) * (1.0 + l * l.exp() - l.exp())),
        "shifted-factorial matrix function",
    )
}

/// Frobenius norm of `a - b` relative to that of `b`.
pub fn relative_frobenius(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).norm() / b.norm()
}

/// Max-abs asymmetry `|m_ij - m_ji|`.
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    (m - m.transpose()).amax()
}
