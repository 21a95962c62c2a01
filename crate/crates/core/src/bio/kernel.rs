//! Scalar Helmholtz kernel and its gradient.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use super::BioError;
use crate::geom::{self, Point};

/// `G_k(x, y) = exp(ik|x - y|) / (4π|x - y|)`.
pub fn kernel_eval(k: f64, x: Point, y: Point) -> Result<C64, BioError> {
    let r = geom::dist(x, y);
    if r == 0.0 {
        return Err(BioError::CoincidentPoints);
    }
    Ok(kernel_at(k, r))
}

#[inline]
pub(crate) fn kernel_at(k: f64, r: f64) -> C64 {
    let (s, c) = (k * r).sin_cos();
    C64::new(c, s) / (4.0 * PI * r)
}

/// Kernel value and the scalar `c` with `∇_x G = c (x - y)`.
#[inline]
pub(crate) fn kernel_and_gradient(k: f64, r: f64) -> (C64, C64) {
    let g = kernel_at(k, r);
    (g, g * C64::new(-1.0, k * r) / (r * r))
}

/// Gradient of the kernel with respect to `x`.
pub fn kernel_gradient(k: f64, x: Point, y: Point) -> Result<[C64; 3], BioError> {
    let d = geom::sub(x, y);
    let r = geom::norm(d);
    if r == 0.0 {
        return Err(BioError::CoincidentPoints);
    }
    let (_, c) = kernel_and_gradient(k, r);
    Ok([c * d[0], c * d[1], c * d[2]])
}
