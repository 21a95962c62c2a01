//! Field evaluation, far fields, interface jumps, error metrics and the Mie
//! series reference.

mod fields;
mod jumps;
mod metrics;
mod mie;

pub use fields::{
    far_field, near_field_grid, point_in_surface, stratton_chu_eval, FarFieldSamples, TraceData, FAR_FIELD_ORDER,
};
pub use jumps::{jump_errors, InterfaceJump};
pub use metrics::{fit_loglog_slope, rel_l2, theta_grid, trapezoid};
pub use mie::MieSolution;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PostError {
    #[error("evaluation point {point:?} is within one mesh size of the surface")]
    TooClose { point: [f64; 3] },
    #[error("far field requested from interior subdomain {0}")]
    InteriorFarField(usize),
    #[error("interface {0}-{1} is empty")]
    EmptyInterface(usize, usize),
    #[error("grids differ in length ({0} vs {1})")]
    GridMismatch(usize, usize),
    #[error("zero reference norm")]
    ZeroDenominator,
    #[error("need at least two samples, got {0}")]
    TooFewSamples(usize),
    #[error("nonphysical Mie parameters: {0}")]
    Nonphysical(String),
    #[error("Mie series did not converge: truncation change {0:.3e}")]
    MieTruncation(f64),
    #[error("trace vector length {got} does not match space dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Quadrature(#[from] crate::quadrature::QuadratureError),
}
