//! Scaled multitrace blocks `[[K, T/ρ], [-ρT, K]]`.

use faer::{Mat, MatRef};
use num_complex::Complex64 as C64;

use super::assembly::{assemble_operators, AssemblyOptions};
use super::dense::DenseBlock;
use super::BioError;
use crate::skeleton::MaterialTable;
use crate::spaces::TraceSpace;

/// Weak multitrace operator of one subdomain. Unknowns are ordered
/// `[electric; magnetic]`, each of the space dimension.
#[derive(Debug, Clone)]
pub struct MultitraceBlock {
    pub subdomain: usize,
    pub wavenumber: f64,
    pub rho: f64,
    pub t: DenseBlock,
    pub k: DenseBlock,
}

impl MultitraceBlock {
    pub fn from_blocks(subdomain: usize, wavenumber: f64, rho: f64, t: DenseBlock, k: DenseBlock) -> Self {
        MultitraceBlock { subdomain, wavenumber, rho, t, k }
    }

    /// Space dimension (half the block size).
    pub fn dim(&self) -> usize {
        self.t.nrows()
    }

    /// `y += alpha * Â x` with `x`, `y` of length `2 * dim`.
    pub fn apply_add(&self, alpha: C64, x: &[C64], y: &mut [C64]) {
        let n = self.dim();
        let xm = MatRef::from_column_major_slice(x, n, 2);
        let mut tx = Mat::<C64>::zeros(n, 2);
        let mut kx = Mat::<C64>::zeros(n, 2);
        self.t.apply_add(C64::new(1.0, 0.0), xm, tx.as_mut());
        self.k.apply_add(C64::new(1.0, 0.0), xm, kx.as_mut());
        for i in 0..n {
            y[i] += alpha * (kx[(i, 0)] + tx[(i, 1)] / self.rho);
            y[n + i] += alpha * (kx[(i, 1)] - tx[(i, 0)] * self.rho);
        }
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![C64::new(0.0, 0.0); x.len()];
        self.apply_add(C64::new(1.0, 0.0), x, &mut y);
        y
    }

    /// Dense `scale * Â`.
    pub fn to_dense(&self, scale: C64) -> Mat<C64> {
        let n = self.dim();
        let t = self.t.to_mat();
        let k = self.k.to_mat();
        Mat::from_fn(2 * n, 2 * n, |i, j| {
            let (bi, ii) = (i / n, i % n);
            let (bj, jj) = (j / n, j % n);
            let v = match (bi, bj) {
                (0, 0) | (1, 1) => k[(ii, jj)],
                (0, 1) => t[(ii, jj)] / self.rho,
                _ => -t[(ii, jj)] * self.rho,
            };
            scale * v
        })
    }
}

/// Assembles the scaled multitrace block of the subdomain owning `space`.
pub fn assemble_multitrace(
    space: &TraceSpace,
    materials: &MaterialTable,
    options: &AssemblyOptions,
) -> Result<MultitraceBlock, BioError> {
    let i = space.subdomain();
    if i >= materials.len() {
        return Err(BioError::MissingMaterial(i));
    }
    let options = AssemblyOptions { efio: true, mfio: true, ..*options };
    let k = materials.k(i);
    let (t, kk) = assemble_operators(space, k, &options)?;
    Ok(MultitraceBlock::from_blocks(i, k, materials.rho(i), t.expect("requested"), kk.expect("requested")))
}
