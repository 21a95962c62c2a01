//! Dense complex operator storage in double or single precision.

use faer::linalg::matmul::matmul;
use faer::{Accum, Mat, MatMut, MatRef, Par};
use num_complex::{Complex32 as C32, Complex64 as C64};
use serde::{Deserialize, Serialize};

/// Storage precision of dense blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    Single,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorLabel {
    /// Electric field operator.
    T,
    /// Magnetic field operator.
    K,
}

#[derive(Debug, Clone)]
pub enum DenseData {
    Double(Mat<C64>),
    Single(Mat<C32>),
}

/// Dense Galerkin matrix: rows are test functions, columns trial functions.
#[derive(Debug, Clone)]
pub struct DenseBlock {
    pub label: OperatorLabel,
    pub data: DenseData,
}

impl DenseBlock {
    pub fn zeros(label: OperatorLabel, nrows: usize, ncols: usize, precision: Precision) -> Self {
        let data = match precision {
            Precision::Double => DenseData::Double(Mat::zeros(nrows, ncols)),
            Precision::Single => DenseData::Single(Mat::zeros(nrows, ncols)),
        };
        DenseBlock { label, data }
    }

    pub fn from_mat(label: OperatorLabel, mat: Mat<C64>) -> Self {
        DenseBlock { label, data: DenseData::Double(mat) }
    }

    pub fn nrows(&self) -> usize {
        match &self.data {
            DenseData::Double(m) => m.nrows(),
            DenseData::Single(m) => m.nrows(),
        }
    }

    pub fn ncols(&self) -> usize {
        match &self.data {
            DenseData::Double(m) => m.ncols(),
            DenseData::Single(m) => m.ncols(),
        }
    }

    pub fn precision(&self) -> Precision {
        match &self.data {
            DenseData::Double(_) => Precision::Double,
            DenseData::Single(_) => Precision::Single,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        match &self.data {
            DenseData::Double(m) => m[(i, j)],
            DenseData::Single(m) => {
                let v = m[(i, j)];
                C64::new(v.re as f64, v.im as f64)
            }
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, i: usize, j: usize, v: C64) {
        match &mut self.data {
            DenseData::Double(m) => m[(i, j)] += v,
            DenseData::Single(m) => m[(i, j)] += C32::new(v.re as f32, v.im as f32),
        }
    }

    /// Double-precision copy.
    pub fn to_mat(&self) -> Mat<C64> {
        match &self.data {
            DenseData::Double(m) => m.clone(),
            DenseData::Single(m) => Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
                let v = m[(i, j)];
                C64::new(v.re as f64, v.im as f64)
            }),
        }
    }

    pub fn max_abs(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.ncols() {
            for i in 0..self.nrows() {
                best = best.max(self.get(i, j).norm());
            }
        }
        best
    }

    /// `dst += alpha * A * x` for a block of column vectors.
    pub fn apply_add(&self, alpha: C64, x: MatRef<'_, C64>, mut dst: MatMut<'_, C64>) {
        match &self.data {
            DenseData::Double(m) => matmul(dst, Accum::Add, m.as_ref(), x, alpha, Par::rayon(0)),
            DenseData::Single(m) => {
                let xs = Mat::from_fn(x.nrows(), x.ncols(), |i, j| {
                    let v = x[(i, j)];
                    C32::new(v.re as f32, v.im as f32)
                });
                let mut out = Mat::<C32>::zeros(m.nrows(), x.ncols());
                matmul(out.as_mut(), Accum::Replace, m.as_ref(), xs.as_ref(), C32::new(1.0, 0.0), Par::rayon(0));
                for j in 0..x.ncols() {
                    for i in 0..m.nrows() {
                        let v = out[(i, j)];
                        dst[(i, j)] += alpha * C64::new(v.re as f64, v.im as f64);
                    }
                }
            }
        }
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        let xm = MatRef::from_column_major_slice(x, x.len(), 1);
        let mut y = Mat::<C64>::zeros(self.nrows(), 1);
        self.apply_add(C64::new(1.0, 0.0), xm, y.as_mut());
        (0..self.nrows()).map(|i| y[(i, 0)]).collect()
    }
}
