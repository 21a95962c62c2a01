//! Sparse square-root surface operator built from RWG mass and div-div
//! matrices and a Padé approximant.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::pade::{pade_coefficients, PadeCoefficients};
use super::PrecondError;
use crate::spaces::{build_div_div, build_mass, TraceSpace};
use crate::sparse::{CsrMatrix, SparseLu};

/// OSRC parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OsrcParams {
    /// Padé order.
    pub np: usize,
    /// Branch rotation angle (radians).
    pub theta: f64,
    /// Damping factor `c` in `ε = c k^(1/3)`.
    pub damping: f64,
}

impl Default for OsrcParams {
    fn default() -> Self {
        OsrcParams { np: 4, theta: std::f64::consts::FRAC_PI_3, damping: 0.4 }
    }
}

/// Which power of `(I + ∇ div / k_ε²)` the block realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OsrcPower {
    /// `(I + ∇ div / k_ε²)^(1/2)`
    Sqrt,
    /// `(I + ∇ div / k_ε²)^(-1/2)`
    InverseSqrt,
}

/// Strong-form Padé realization of the square-root operator on one space.
pub struct OsrcBlock {
    pub mass: CsrMatrix,
    pub div_div: CsrMatrix,
    pub k_eps: C64,
    pub pade: PadeCoefficients,
    pub power: OsrcPower,
    mass_lu: SparseLu,
    terms: Vec<SparseLu>,
    shifted: Option<SparseLu>,
}

impl OsrcBlock {
    pub fn new(space: &TraceSpace, k: f64, params: OsrcParams, power: OsrcPower) -> Result<Self, PrecondError> {
        let k_eps = C64::new(k, params.damping * k.cbrt());
        let pade = pade_coefficients(params.np, params.theta)?;
        let mass = build_mass(space);
        let div_div = build_div_div(space);
        let mass_lu = SparseLu::factor(&mass)?;
        let inv_k2 = 1.0 / (k_eps * k_eps);
        let one = C64::new(1.0, 0.0);
        let terms = pade
            .b
            .iter()
            .map(|b| SparseLu::factor_combination(&[(one, &mass), (-b * inv_k2, &div_div)]))
            .collect::<Result<Vec<_>, _>>()?;
        let shifted = match power {
            OsrcPower::Sqrt => None,
            OsrcPower::InverseSqrt => Some(SparseLu::factor_combination(&[(one, &mass), (-inv_k2, &div_div)])?),
        };
        Ok(OsrcBlock { mass, div_div, k_eps, pade, power, mass_lu, terms, shifted })
    }

    pub fn dim(&self) -> usize {
        self.mass.nrows
    }

    /// Applies the operator to RWG coefficients.
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let n = self.dim();
        let zero = C64::new(0.0, 0.0);
        let inv_k2 = 1.0 / (self.k_eps * self.k_eps);
        let mx = self.mass.matvec(x);
        let mut acc = vec![zero; n];
        for (lu, a) in self.terms.iter().zip(&self.pade.a) {
            let mut y = mx.clone();
            lu.solve_in_place(&mut y);
            self.div_div.matvec_add(-a * inv_k2, &y, &mut acc);
        }
        self.mass_lu.solve_in_place(&mut acc);
        let mut out: Vec<C64> = x.iter().zip(&acc).map(|(xi, ai)| self.pade.c0 * xi + ai).collect();
        if let Some(lu) = &self.shifted {
            let mut m = self.mass.matvec(&out);
            lu.solve_in_place(&mut m);
            out = m;
        }
        out
    }

    /// `M_s⁻¹ x`.
    pub fn mass_solve(&self, x: &mut [C64]) {
        self.mass_lu.solve_in_place(x);
    }
}
