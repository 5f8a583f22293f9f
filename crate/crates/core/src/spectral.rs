//! Dense symmetric eigendecomposition of adjacency matrices.
//!
//! Backed by nalgebra's Householder tridiagonalisation with implicit-shift QR.
//! The contract is accuracy, not algorithm: columns of `vectors` are
//! orthonormal to 1e-8 and `V diag(values) V^T` reproduces `A` to
//! `1e-8 * (1 + max |lambda|)` in max-abs norm.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::Graph;

const EPS: f64 = f64::EPSILON;
const MAX_ITER: usize = 10_000;

/// Eigenvalues sorted non-increasing with their eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    vectors: DMatrix<f64>,
}

impl EigenDecomposition {
    /// `lambda_1 >= ... >= lambda_n`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column `j` pairs with `values()[j]`.
    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Largest eigenvalue (0 for the empty graph).
    pub fn spectral_radius(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Component `p` of eigenvector `j`.
    #[inline]
    pub fn component(&self, j: usize, p: usize) -> f64 {
        self.vectors[(p, j)]
    }

    /// Max-abs entry of `V^T V - I`.
    pub fn orthonormality_error(&self) -> f64 {
        let gram = self.vectors.transpose() * &self.vectors;
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (gram[(i, j)] - f64::from(u8::from(i == j))).abs())
            .fold(0.0, f64::max)
    }

    /// Max-abs entry of `V diag(values) V^T - a`.
    pub fn reconstruction_error(&self, a: &DMatrix<f64>) -> f64 {
        self.reconstruct_with(|l| l)
            .iter()
            .zip(a.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// `V diag(f(values)) V^T`: the spectral matrix function of `f`.
    pub fn reconstruct_with<F: Fn(f64) -> f64>(&self, f: F) -> DMatrix<f64> {
        let weights: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        self.reconstruct_weights(&weights)
    }

    /// `V diag(weights) V^T`.
    pub fn reconstruct_weights(&self, weights: &[f64]) -> DMatrix<f64> {
        let mut scaled = self.vectors.clone();
        for (j, &w) in weights.iter().enumerate() {
            scaled.column_mut(j).scale_mut(w);
        }
        let mut out = &scaled * self.vectors.transpose();
        // exact symmetry
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (out[(i, j)] + out[(j, i)]);
                out[(i, j)] = avg;
                out[(j, i)] = avg;
            }
        }
        out
    }
}

pub fn eigendecompose(g: &Graph) -> Result<EigenDecomposition> {
    eigendecompose_matrix(g.adjacency_matrix())
}

/// Decomposes a symmetric matrix. Only the lower triangle is read.
pub fn eigendecompose_matrix(a: DMatrix<f64>) -> Result<EigenDecomposition> {
    let n = a.nrows();
    if n == 0 {
        return Ok(EigenDecomposition {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    if n == 1 {
        return Ok(EigenDecomposition {
            values: vec![a[(0, 0)]],
            vectors: DMatrix::from_element(1, 1, 1.0),
        });
    }
    let eig = SymmetricEigen::try_new(a, EPS, MAX_ITER).ok_or(Error::NoConvergence {
        n,
        max_iter: MAX_ITER,
    })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = eig.eigenvectors.column(src);
        // deterministic sign: largest-magnitude component positive, so the
        // Perron vector of a connected graph is non-negative
        let pivot = col
            .iter()
            .copied()
            .fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
        vectors.set_column(dst, &(col * sign));
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues only, sorted non-increasing. Cheaper than the full
/// decomposition; enough for traces of spectral functions.
pub fn eigenvalues(g: &Graph) -> Result<Vec<f64>> {
    let n = g.n();
    if n <= 1 {
        return Ok(vec![0.0; n]);
    }
    // SymmetricEigen::try_new with eigenvectors is the only fallible entry
    // point; the eigenvalue-only path below panics on non-convergence, which
    // cannot happen for a 0/1 symmetric matrix within the iteration cap.
    let mut values: Vec<f64> = g
        .adjacency_matrix()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

pub fn spectral_radius(g: &Graph) -> Result<f64> {
    Ok(eigenvalues(g)?.first().copied().unwrap_or(0.0))
}
