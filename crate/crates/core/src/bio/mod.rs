//! Boundary integral operators: kernel, dense T/K assembly, multitrace and
//! transmission blocks.

mod assembly;
mod dense;
mod dump;
mod kernel;
mod multitrace;
mod transmission;

pub use assembly::{assemble_efio, assemble_mfio, assemble_operators, AssemblyOptions};
pub use dense::{DenseBlock, DenseData, OperatorLabel, Precision};
pub use dump::{read_block, write_block, DumpHeader};
pub use kernel::{kernel_eval, kernel_gradient};
pub use multitrace::{assemble_multitrace, MultitraceBlock};
pub use transmission::assemble_transmission;

pub(crate) use kernel::kernel_and_gradient;

use thiserror::Error;

use crate::quadrature::QuadratureError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BioError {
    #[error("kernel evaluated at coincident points")]
    CoincidentPoints,
    #[error("invalid wavenumber {0}")]
    InvalidWavenumber(f64),
    #[error("non-finite entry for triangle pair ({test}, {trial})")]
    NonFinite { test: usize, trial: usize },
    #[error("transmission requested between subdomain {0} and itself")]
    SameSubdomain(usize),
    #[error("no material for subdomain {0}")]
    MissingMaterial(usize),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed block dump: {0}")]
    Format(String),
}
