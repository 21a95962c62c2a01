//! Unrestarted GMRES, dense LU and dense spectra.

mod gmres;
mod lu;
mod spectrum;

pub use gmres::{gmres, write_history_csv, GmresOptions, SolveReport};
pub use lu::{lu_solve, DenseLu};
pub use spectrum::{materialize, spectrum, DEFAULT_SPECTRUM_CAP};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KrylovError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("GMRES breakdown at iteration {0}")]
    Breakdown(usize),
    #[error("non-finite operator output at iteration {0}")]
    NonFinite(usize),
    #[error("matrix is singular to machine precision")]
    Singular,
    #[error("matrix is not square ({0} x {1})")]
    NotSquare(usize, usize),
    #[error("dimension {size} exceeds the dense spectrum cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("eigenvalue computation failed")]
    Eigen,
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

use num_complex::Complex64 as C64;

pub(crate) fn norm2(x: &[C64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}
