//! Rotated-branch Padé approximants of `sqrt(1 + z)`.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use super::PrecondError;

/// `R(z) = C0 + Σ_j A_j z / (1 + B_j z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PadeCoefficients {
    pub c0: C64,
    pub a: Vec<C64>,
    pub b: Vec<C64>,
}

impl PadeCoefficients {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.c0 + self.a.iter().zip(&self.b).map(|(a, b)| a * z / (1.0 + b * z)).sum::<C64>()
    }
}

/// Padé coefficients of order `np` with the branch cut rotated by `theta`,
/// scaled so that `R(0) = 1` exactly.
pub fn pade_coefficients(np: usize, theta: f64) -> Result<PadeCoefficients, PrecondError> {
    if np < 1 {
        return Err(PrecondError::PadeOrder(np));
    }
    let m = (2 * np + 1) as f64;
    let real_a: Vec<f64> = (1..=np).map(|j| 2.0 / m * (j as f64 * PI / m).sin().powi(2)).collect();
    let real_b: Vec<f64> = (1..=np).map(|j| (j as f64 * PI / m).cos().powi(2)).collect();
    let rot = C64::from_polar(1.0, -theta);
    let shift = rot - 1.0;
    let real_r = |z: C64| C64::new(1.0, 0.0) + real_a.iter().zip(&real_b).map(|(a, b)| *a * z / (1.0 + *b * z)).sum::<C64>();
    let c0 = C64::from_polar(1.0, theta / 2.0) * real_r(shift);
    let half = C64::from_polar(1.0, -theta / 2.0) / c0;
    let a = real_a.iter().zip(&real_b).map(|(a, b)| half * *a / (1.0 + *b * shift).powi(2)).collect();
    let b = real_b.iter().map(|b| rot * *b / (1.0 + *b * shift)).collect();
    Ok(PadeCoefficients { c0: C64::new(1.0, 0.0), a, b })
}
