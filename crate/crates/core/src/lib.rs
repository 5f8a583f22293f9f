//! Walk-based matrix functions of graph adjacency matrices.
//!
//! The central object is the double-factorial function
//! `sum_k beta^k A^k / k!!`, which has the closed form
//! `(1/2)[sqrt(2 pi) erf(beta A / sqrt 2) + 2I] exp(beta^2 A^2 / 2)` and a
//! cheaper surrogate with `erf(y)` replaced by `tanh(kappa y)`,
//! `kappa = sqrt(pi) ln 2`. Around it sit the ordinary exponential
//! (communicability, subgraph centrality, Estrada index), the Katz
//! resolvent, extremal bounds, exhaustive small-graph enumeration and the
//! rank statistics used to compare the indices.
//!
//! Everything is computed spectrally from one dense eigendecomposition.
//! Index values are carried as [`SignedLogValue`]s so graphs whose indices
//! exceed `f64::MAX` are still handled.

pub mod analysis;
pub mod enumeration;
mod error;
pub mod exec;
pub mod graph;
pub mod indices;
pub mod spectral;
pub mod walkfn;

pub use error::{Error, Location, Result};
pub use exec::Execution;
pub use graph::{generate, Graph, GraphKind};
pub use spectral::{eigendecompose, EigenDecomposition};
pub use walkfn::{DfForm, SignedLogValue, WeightScheme};
