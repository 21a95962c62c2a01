use faer::linalg::solvers::{PartialPivLu, SolveCore};
use faer::{Conj, Mat, MatMut};
use num_complex::Complex64 as C64;

use super::KrylovError;

/// Dense partially pivoted LU with a singularity check on the pivots.
pub struct DenseLu {
    lu: PartialPivLu<C64>,
    n: usize,
}

impl DenseLu {
    pub fn new(a: &Mat<C64>) -> Result<Self, KrylovError> {
        if a.nrows() != a.ncols() {
            return Err(KrylovError::NotSquare(a.nrows(), a.ncols()));
        }
        let n = a.nrows();
        let lu = a.partial_piv_lu();
        let u = lu.U();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let d = u[(i, i)].norm();
            lo = lo.min(d);
            hi = hi.max(d);
        }
        if n > 0 && (!lo.is_finite() || !hi.is_finite() || lo <= hi * f64::EPSILON * n as f64) {
            return Err(KrylovError::Singular);
        }
        Ok(DenseLu { lu, n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve_in_place(&self, x: &mut [C64]) {
        let mat = MatMut::from_column_major_slice_mut(x, self.n, 1);
        self.lu.solve_in_place_with_conj(Conj::No, mat);
    }
}

/// Solves `A x = b` by partially pivoted LU.
pub fn lu_solve(a: &Mat<C64>, b: &[C64]) -> Result<Vec<C64>, KrylovError> {
    let lu = DenseLu::new(a)?;
    if b.len() != lu.dim() {
        return Err(KrylovError::Dimension { expected: lu.dim(), got: b.len() });
    }
    let mut x = b.to_vec();
    lu.solve_in_place(&mut x);
    Ok(x)
}
