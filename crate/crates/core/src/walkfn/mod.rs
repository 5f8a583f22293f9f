//! Walk-weighted matrix functions `sum_k c_k beta^k A^k` and the scalar
//! machinery behind them.

mod matrix;
mod profile;
mod scheme;
mod series;
mod signed_log;
pub mod special;

pub use matrix::{
    asymmetry, df_bracket, df_matrix, df_matrix_exact, df_matrix_tanh, df_scalar, df_scalar_log,
    katz_resolvent, matrix_exp, relative_frobenius, shifted_factorial_alt_form,
    shifted_factorial_matrix, DfForm,
};
pub use profile::{closed_walks, closed_walks_at, integer_spectral_moment, walk_decay_profile};
pub use scheme::WeightScheme;
pub use series::{series_oracle, SeriesSum};
pub use signed_log::SignedLogValue;
pub use special::{bessel_i, double_factorial, erf_scalar, TANH_SCALE};
