use num_complex::Complex64 as C64;

use super::SystemError;
use crate::spaces::{build_pairing, TraceSpace};
use crate::sparse::{CsrMatrix, SparseLu};

/// Factorized twisted pairing of one subdomain, for strong-form compositions.
pub struct PairingInverse {
    pub matrix: CsrMatrix,
    lu: SparseLu,
}

/// Largest accepted relative residual of the factorization self-check.
const ACCEPT: f64 = 1e-8;

impl PairingInverse {
    /// Factorizes `G` and verifies the factorization on a fixed probe vector.
    pub fn new(space: &TraceSpace) -> Result<Self, SystemError> {
        let matrix = build_pairing(space);
        let lu = SparseLu::factor(&matrix)?;
        let n = matrix.nrows;
        let probe: Vec<C64> = (0..n).map(|i| C64::new(1.0 + (i % 7) as f64, (i % 3) as f64 - 1.0)).collect();
        let mut x = probe.clone();
        lu.solve_in_place(&mut x);
        let gx = matrix.matvec(&x);
        let num: f64 = gx.iter().zip(&probe).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        let den: f64 = probe.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let residual = num / den;
        if !(residual <= ACCEPT) {
            return Err(SystemError::SingularPairing { subdomain: space.subdomain(), residual });
        }
        Ok(PairingInverse { matrix, lu })
    }

    /// Applies `G⁻¹` to each half of an `[electric; magnetic]` vector.
    pub fn solve_pair_in_place(&self, x: &mut [C64]) {
        let n = self.matrix.nrows;
        let (a, b) = x.split_at_mut(n);
        self.lu.solve_in_place(a);
        self.lu.solve_in_place(b);
    }
}
