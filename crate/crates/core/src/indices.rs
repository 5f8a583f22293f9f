//! Communicability, subgraph centrality, Estrada indices, the difference
//! series between the double-factorial and exponential versions, and the
//! extremal bounds on the double-factorial Estrada index.
//!
//! All index values are assembled in signed-log arithmetic from the
//! spectrum: `f(A)_pq = sum_j psi_jp psi_jq f(lambda_j)`.

use std::f64::consts::E;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::Graph;
use crate::spectral::{eigendecompose, EigenDecomposition};
use crate::walkfn::special::{double_factorial_exact, ln_double_factorial};
use crate::walkfn::{
    bessel_i, closed_walks, closed_walks_at, df_matrix, df_scalar_log, matrix_exp, DfForm,
    SignedLogValue, WeightScheme,
};

/// Whether values were assembled in linear floating point or in log form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Linear,
    Log,
}

/// Per-node index values with the parameters that produced them.
#[derive(Debug, Clone)]
pub struct CentralityVector {
    pub values: Vec<SignedLogValue>,
    pub scheme: WeightScheme,
    pub beta: f64,
    pub domain: Domain,
}

impl CentralityVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values as `f64`, `inf` where they exceed the floating-point range.
    pub fn linear(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.to_f64()).collect()
    }

    pub fn total(&self) -> SignedLogValue {
        self.values.iter().copied().sum()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub lower: SignedLogValue,
    pub upper: SignedLogValue,
}

#[derive(Debug, Clone)]
pub struct IndexReport {
    pub estrada: SignedLogValue,
    pub per_node: CentralityVector,
    pub bounds: Option<Bounds>,
}

/// `f(beta lambda)` for the scheme's generating function, in log form.
pub fn spectral_weight(
    scheme: WeightScheme,
    beta: f64,
    lambda: f64,
    form: DfForm,
) -> Result<SignedLogValue> {
    let x = beta * lambda;
    Ok(match scheme {
        WeightScheme::Factorial => SignedLogValue::from_ln(x),
        WeightScheme::DoubleFactorial => df_scalar_log(x, form),
        WeightScheme::Geometric(alpha) => {
            let d = 1.0 - alpha * x;
            if d <= 0.0 {
                return Err(Error::Divergence(format!(
                    "geometric weights diverge: alpha * beta * lambda = {}",
                    alpha * x
                )));
            }
            SignedLogValue::from_ln(-d.ln())
        }
        WeightScheme::ShiftedFactorial(t) => {
            SignedLogValue::from_f64(x).powi(t) * SignedLogValue::from_ln(x)
        }
    })
}

fn weights(
    eig: &EigenDecomposition,
    scheme: WeightScheme,
    beta: f64,
    form: DfForm,
) -> Result<Vec<SignedLogValue>> {
    scheme.validate()?;
    if !beta.is_finite() {
        return Err(Error::invalid(format!("beta must be finite, got {beta}")));
    }
    eig.values()
        .iter()
        .map(|&l| spectral_weight(scheme, beta, l, form))
        .collect()
}

/// Communicability matrix or selected entries of it.
#[derive(Debug, Clone)]
pub enum Communicability {
    Matrix(DMatrix<f64>),
    Pairs(Vec<f64>),
}

/// `G_pq = exp(beta A)_pq` for [`WeightScheme::Factorial`], or the
/// double-factorial communicability for [`WeightScheme::DoubleFactorial`]
/// (tanh surrogate unless `form` is [`DfForm::Exact`]).
pub fn communicability(
    eig: &EigenDecomposition,
    scheme: WeightScheme,
    beta: f64,
    form: DfForm,
    pairs: Option<&[(usize, usize)]>,
) -> Result<Communicability> {
    if !matches!(
        scheme,
        WeightScheme::Factorial | WeightScheme::DoubleFactorial
    ) {
        return Err(Error::invalid(format!(
            "communicability is defined for the exp and df schemes, not {scheme}"
        )));
    }
    let Some(pairs) = pairs else {
        let m = match scheme {
            WeightScheme::Factorial => matrix_exp(eig, beta)?,
            _ => df_matrix(eig, beta, form)?,
        };
        return Ok(Communicability::Matrix(m));
    };
    let w = weights(eig, scheme, beta, form)?;
    let n = eig.n();
    pairs
        .iter()
        .map(|&(p, q)| {
            if p >= n || q >= n {
                return Err(Error::IndexOutOfRange { index: p.max(q), n });
            }
            let v: SignedLogValue = w
                .iter()
                .enumerate()
                .map(|(j, &wj)| {
                    SignedLogValue::from_f64(eig.component(j, p) * eig.component(j, q)) * wj
                })
                .sum();
            v.to_finite().ok_or_else(|| Error::Overflow {
                what: format!("communicability ({p}, {q})"),
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Communicability::Pairs)
}

/// Diagonal of the matrix function: `sum_j psi_jp^2 f(beta lambda_j)`.
///
/// In log mode the sum is a signed log-sum-exp and cannot overflow; in
/// linear mode it is a plain floating-point sum and overflow is an error.
pub fn subgraph_centrality(
    eig: &EigenDecomposition,
    scheme: WeightScheme,
    beta: f64,
    form: DfForm,
    log_domain: bool,
) -> Result<CentralityVector> {
    let w = weights(eig, scheme, beta, form)?;
    let n = eig.n();
    // Equal weights (beta = 0, or a one-point spectrum) give f * I exactly.
    let values = if w.windows(2).all(|p| p[0] == p[1]) && !w.is_empty() {
        if !log_domain && w[0].to_finite().is_none() {
            return Err(Error::Overflow {
                what: "subgraph centrality".into(),
            });
        }
        vec![w[0]; n]
    } else if log_domain {
        (0..n)
            .map(|p| {
                w.iter()
                    .enumerate()
                    .map(|(j, &wj)| SignedLogValue::from_f64(eig.component(j, p).powi(2)) * wj)
                    .sum()
            })
            .collect()
    } else {
        let lin: Vec<f64> = w.iter().map(|x| x.to_f64()).collect();
        (0..n)
            .map(|p| {
                let v: f64 = lin
                    .iter()
                    .enumerate()
                    .map(|(j, &wj)| eig.component(j, p).powi(2) * wj)
                    .sum();
                if v.is_finite() {
                    Ok(SignedLogValue::from_f64(v))
                } else {
                    Err(Error::Overflow {
                        what: format!("subgraph centrality of node {p}"),
                    })
                }
            })
            .collect::<Result<_>>()?
    };
    Ok(CentralityVector {
        values,
        scheme,
        beta,
        domain: if log_domain {
            Domain::Log
        } else {
            Domain::Linear
        },
    })
}

/// Trace of the matrix function, `sum_j f(beta lambda_j)`, in log form.
pub fn estrada_index(
    eig: &EigenDecomposition,
    scheme: WeightScheme,
    beta: f64,
    form: DfForm,
) -> Result<SignedLogValue> {
    estrada_from_spectrum(eig.values(), scheme, beta, form)
}

/// As [`estrada_index`], from eigenvalues alone.
pub fn estrada_from_spectrum(
    values: &[f64],
    scheme: WeightScheme,
    beta: f64,
    form: DfForm,
) -> Result<SignedLogValue> {
    scheme.validate()?;
    if !beta.is_finite() {
        return Err(Error::invalid(format!("beta must be finite, got {beta}")));
    }
    let terms = values
        .iter()
        .map(|&l| spectral_weight(scheme, beta, l, form))
        .collect::<Result<Vec<_>>>()?;
    Ok(SignedLogValue::sum_terms(terms))
}

/// Estrada index, per-node centralities and (for the double-factorial
/// scheme) the extremal bounds for a graph of this order.
pub fn index_report(
    eig: &EigenDecomposition,
    scheme: WeightScheme,
    beta: f64,
    form: DfForm,
) -> Result<IndexReport> {
    let per_node = subgraph_centrality(eig, scheme, beta, form, true)?;
    let estrada = estrada_index(eig, scheme, beta, form)?;
    let bounds =
        (scheme == WeightScheme::DoubleFactorial && beta == 1.0 && eig.n() > 0).then(|| Bounds {
            lower: SignedLogValue::from_f64(gamma_lower_bound_asymptotic(eig.n())),
            upper: gamma_upper_bound(eig.n(), form),
        });
    Ok(IndexReport {
        estrada,
        per_node,
        bounds,
    })
}

/// Estrada indices of many graphs, one decomposition each.
pub fn estrada_batch(
    graphs: &[Graph],
    scheme: WeightScheme,
    beta: f64,
    form: DfForm,
    exec: Execution,
) -> Result<Vec<SignedLogValue>> {
    exec.map(graphs, |g| {
        crate::spectral::eigenvalues(g)
            .and_then(|vals| estrada_from_spectrum(&vals, scheme, beta, form))
    })
    .into_iter()
    .collect()
}

/// `1/k!! - 1/k! = ((k-1)!! - 1) / (k!! (k-1)!!)`, the weight of a closed
/// walk of length `k` in `Gamma_pp - EE_pp`.
pub fn delta_coefficient(k: u32) -> SignedLogValue {
    if k < 2 {
        return SignedLogValue::ZERO;
    }
    let ln_kdf = ln_double_factorial(i64::from(k)).expect("k >= 0");
    let ln_prev = ln_double_factorial(i64::from(k) - 1).expect("k >= 1");
    // (1/k!!) (1 - 1/(k-1)!!)
    let one_minus = -(-ln_prev).exp_m1();
    if one_minus == 0.0 {
        return SignedLogValue::ZERO;
    }
    SignedLogValue::from_ln(-ln_kdf + one_minus.ln())
}

/// [`delta_coefficient`] as a reduced fraction `(numerator, denominator)`,
/// available while `k!` fits in a `u128` (`k <= 34`).
pub fn delta_coefficient_exact(k: u32) -> Option<(u128, u128)> {
    let kdf = double_factorial_exact(i64::from(k))?;
    let prev = double_factorial_exact(i64::from(k) - 1)?;
    let num = prev - 1;
    let den = kdf.checked_mul(prev)?;
    let g = num_integer::gcd(num, den).max(1);
    Some((num / g, den / g))
}

#[derive(Debug, Clone)]
pub struct DeltaSeries {
    /// `delta_coefficient(k)` for `k = 3..=K`.
    pub coefficients: Vec<SignedLogValue>,
    /// `coefficient(k) * (A^k)_pp` for `k = 3..=K`.
    pub terms: Vec<SignedLogValue>,
    pub partial_sums: Vec<SignedLogValue>,
    /// Partial sum at `K`.
    pub delta: SignedLogValue,
    /// `Gamma_pp - EE_pp` from the exact (erf) closed form.
    pub closed_form: SignedLogValue,
}

/// Truncated series for `Delta_p = Gamma_pp - EE_pp = sum_{k>=3}
/// ((k-1)!! - 1)/(k!! (k-1)!!) (A^k)_pp` at `beta = 1`.
pub fn delta_series(g: &Graph, p: usize, max_k: u32) -> Result<DeltaSeries> {
    if max_k < 3 {
        return Err(Error::invalid("delta series needs K >= 3"));
    }
    if p >= g.n() {
        return Err(Error::IndexOutOfRange { index: p, n: g.n() });
    }
    let eig = eigendecompose(g)?;
    let mut coefficients = Vec::new();
    let mut terms = Vec::new();
    let mut partial_sums = Vec::new();
    let mut acc = SignedLogValue::ZERO;
    for k in 3..=max_k {
        let c = delta_coefficient(k);
        let t = c * closed_walks_at(&eig, p, k);
        acc = acc + t;
        coefficients.push(c);
        terms.push(t);
        partial_sums.push(acc);
    }
    let gamma = subgraph_centrality(
        &eig,
        WeightScheme::DoubleFactorial,
        1.0,
        DfForm::Exact,
        true,
    )?;
    let ee = subgraph_centrality(&eig, WeightScheme::Factorial, 1.0, DfForm::Exact, true)?;
    Ok(DeltaSeries {
        coefficients,
        terms,
        partial_sums,
        delta: acc,
        closed_form: gamma.values[p] - ee.values[p],
    })
}

#[derive(Debug, Clone, Copy)]
pub struct DifferenceTerm {
    pub k: u32,
    pub term: SignedLogValue,
    pub partial_sum: SignedLogValue,
}

/// Terms `delta_coefficient(k) beta^k tr(A^k)` for `k = 3..=K`, whose sum is
/// `Gamma(G, beta) - EE(G, beta)` with the exact double-factorial function.
pub fn estrada_difference_series(
    eig: &EigenDecomposition,
    beta: f64,
    max_k: u32,
) -> Result<Vec<DifferenceTerm>> {
    if max_k < 3 {
        return Err(Error::invalid("difference series needs K >= 3"));
    }
    if !beta.is_finite() {
        return Err(Error::invalid(format!("beta must be finite, got {beta}")));
    }
    let b = SignedLogValue::from_f64(beta);
    let mut acc = SignedLogValue::ZERO;
    Ok((3..=max_k)
        .map(|k| {
            let term = delta_coefficient(k) * b.powi(k) * closed_walks(eig, k);
            acc = acc + term;
            DifferenceTerm {
                k,
                term,
                partial_sum: acc,
            }
        })
        .collect())
}

/// Double-factorial Estrada index of the complete graph `K_n`, the maximum
/// over connected graphs on `n` nodes:
/// `f(n-1) + (n-1) f(-1)` with `f(x) = (1/2)(sqrt(2 pi) odd(x) + 2) exp(x^2/2)`.
pub fn gamma_upper_bound(n: usize, form: DfForm) -> SignedLogValue {
    if n == 0 {
        return SignedLogValue::ZERO;
    }
    let top = df_scalar_log((n - 1) as f64, form);
    let rest = SignedLogValue::from_f64((n - 1) as f64) * df_scalar_log(-1.0, form);
    top + rest
}

/// `e I_0(1)`, the per-node limit of `Gamma(P_n) / n`.
pub fn path_gamma_slope() -> f64 {
    E * bessel_i(0, 1.0)
}

/// `e I_0(1) (n + 1/2) - e^2/2`, the large-`n` form of `Gamma(P_n)`.
///
/// This is an asymptotic expression, not a bound valid for every `n`: for
/// small `n` it exceeds `Gamma(P_n)` (e.g. `n = 4`: 11.79 against 9.83).
pub fn gamma_lower_bound_asymptotic(n: usize) -> f64 {
    path_gamma_slope() * (n as f64 + 0.5) - 0.5 * E * E
}
