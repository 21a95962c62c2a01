use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::geom::{self, CVec, Point};

/// Plane wave `E(x) = p exp(i k0 d·x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncidentField {
    pub polarization: CVec,
    pub direction: CVec,
    pub k0: f64,
}

impl IncidentField {
    pub fn new(polarization: CVec, direction: CVec, k0: f64) -> Self {
        IncidentField { polarization, direction, k0 }
    }

    /// Unit-normalizes a real direction.
    pub fn with_real_direction(polarization: CVec, direction: Point, k0: f64) -> Self {
        IncidentField::new(polarization, geom::to_c(geom::normalize(direction)), k0)
    }

    fn phase(&self, x: Point) -> C64 {
        let dx = geom::cdot_real(&self.direction, x);
        (C64::new(0.0, self.k0) * dx).exp()
    }

    pub fn electric(&self, x: Point) -> CVec {
        geom::cscale(self.phase(x), &self.polarization)
    }

    /// `(1/ik0) curl E = (d × p) exp(i k0 d·x)`.
    pub fn scaled_curl(&self, x: Point) -> CVec {
        geom::cscale(self.phase(x), &geom::ccross(&self.direction, &self.polarization))
    }

    /// `E × n`.
    pub fn dirichlet_trace(&self, x: Point, n: Point) -> CVec {
        geom::ccross(&self.electric(x), &geom::to_c(n))
    }

    /// `(1/ik0) curl E × n`.
    pub fn neumann_trace(&self, x: Point, n: Point) -> CVec {
        geom::ccross(&self.scaled_curl(x), &geom::to_c(n))
    }
}
