//! Triangle and triangle-pair quadrature.

mod gauss;
mod singular;
mod triangle;

pub use gauss::gauss_legendre_01;
pub use singular::{singular_pair_rule, Adjacency, PairRule};
pub use triangle::{gauss_triangle, TriangleRule, MAX_TRIANGLE_ORDER};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("unsupported quadrature order {0}")]
    UnsupportedOrder(usize),
    #[error("no singular rule for adjacency case {0:?}")]
    UnsupportedCase(Adjacency),
}

/// Quadrature orders used by operator assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureOrders {
    /// Regular rule for well-separated pairs.
    pub regular: usize,
    /// Regular rule for pairs closer than two mean triangle diameters.
    pub near: usize,
    /// Gauss points per dimension of the singular transforms.
    pub singular: usize,
}

impl Default for QuadratureOrders {
    fn default() -> Self {
        QuadratureOrders { regular: 4, near: 6, singular: 5 }
    }
}
