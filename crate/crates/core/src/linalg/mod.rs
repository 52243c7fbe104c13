//! The singular value decomposition as the nucleus of a real matrix.
//!
//! For `Φ: ℝⁿ → ℝᵐ` the adjoint `Φ‡` is the transpose, the induced
//! operators are the Gram matrices `Φ‡Φ` and `ΦΦ‡`, and the nucleus keeps
//! the eigenbases of both on the positive spectrum.

mod eigen;
mod io;
mod matrix;
mod svd;

use thiserror::Error;

pub use eigen::{sym_eigen, Eigen, MAX_SWEEPS};
pub use io::{parse_matrix_csv, SvdJson};
pub use matrix::{dot, norm, DenseMatrix};
pub use svd::{
    check_spectral, nucleus_idempotence_check, rank_factorization, spectral_deviations, svd_nucleus, Idempotence,
    SpectralDeviations, SpectralNucleus, SpectralTolerances, DEFAULT_TOL,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not symmetric (deviation {0:e})")]
    Asymmetric(f64),
    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("parse error: {0}")]
    Parse(String),
}
