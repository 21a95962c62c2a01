//! Real compressed-row matrices with complex matvec, and a complex sparse LU wrapper.

use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};
use faer::Mat;
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SparseError {
    #[error("sparse factorization failed: {0}")]
    Factorization(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// Real CSR matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(nrows: usize, ncols: usize, mut trip: Vec<(usize, usize, f64)>) -> Self {
        trip.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut indptr = vec![0usize; nrows + 1];
        let mut indices = Vec::with_capacity(trip.len());
        let mut values: Vec<f64> = Vec::with_capacity(trip.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in trip {
            assert!(i < nrows && j < ncols, "triplet ({i}, {j}) out of bounds");
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
            } else {
                indices.push(j);
                values.push(v);
                indptr[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..nrows {
            indptr[i + 1] += indptr[i];
        }
        CsrMatrix { nrows, ncols, indptr, indices, values }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        CsrMatrix { nrows, ncols, indptr: vec![0; nrows + 1], indices: Vec::new(), values: Vec::new() }
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.indptr[i], self.indptr[i + 1]);
        self.indices[a..b].binary_search(&j).map_or(0.0, |p| self.values[a + p])
    }

    /// Entries as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nrows).flat_map(move |i| {
            (self.indptr[i]..self.indptr[i + 1]).map(move |p| (i, self.indices[p], self.values[p]))
        })
    }

    /// `y += alpha * A x`.
    pub fn matvec_add(&self, alpha: C64, x: &[C64], y: &mut [C64]) {
        debug_assert_eq!(x.len(), self.ncols);
        debug_assert_eq!(y.len(), self.nrows);
        for i in 0..self.nrows {
            let mut s = C64::new(0.0, 0.0);
            for p in self.indptr[i]..self.indptr[i + 1] {
                s += x[self.indices[p]] * self.values[p];
            }
            y[i] += alpha * s;
        }
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![C64::new(0.0, 0.0); self.nrows];
        self.matvec_add(C64::new(1.0, 0.0), x, &mut y);
        y
    }

    pub fn transpose(&self) -> CsrMatrix {
        CsrMatrix::from_triplets(self.ncols, self.nrows, self.triplets().map(|(i, j, v)| (j, i, v)).collect())
    }

    pub fn scaled(&self, s: f64) -> CsrMatrix {
        CsrMatrix { values: self.values.iter().map(|v| v * s).collect(), ..self.clone() }
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let mut m = Mat::<f64>::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.triplets() {
            m[(i, j)] += v;
        }
        m
    }

    /// Maximum absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Complex sparse LU factorization of a square matrix.
pub struct SparseLu {
    n: usize,
    lu: faer::sparse::linalg::solvers::Lu<usize, C64>,
}

impl std::fmt::Debug for SparseLu {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SparseLu").field("n", &self.n).finish()
    }
}

impl SparseLu {
    /// Factorizes `sum_k coeff_k * A_k` for real sparse terms of equal shape.
    pub fn factor_combination(terms: &[(C64, &CsrMatrix)]) -> Result<Self, SparseError> {
        let n = terms[0].1.nrows;
        let mut trip: Vec<Triplet<usize, usize, C64>> = Vec::new();
        let mut acc: std::collections::BTreeMap<(usize, usize), C64> = Default::default();
        for (c, m) in terms {
            if m.nrows != n || m.ncols != n {
                return Err(SparseError::Dimension { expected: n, got: m.nrows });
            }
            for (i, j, v) in m.triplets() {
                *acc.entry((j, i)).or_default() += c * v;
            }
        }
        for ((j, i), v) in acc {
            trip.push(Triplet::new(i, j, v));
        }
        let a = SparseColMat::<usize, C64>::try_new_from_triplets(n, n, &trip)
            .map_err(|e| SparseError::Factorization(format!("{e:?}")))?;
        let lu = a.sp_lu().map_err(|e| SparseError::Factorization(format!("{e:?}")))?;
        Ok(SparseLu { n, lu })
    }

    pub fn factor(a: &CsrMatrix) -> Result<Self, SparseError> {
        Self::factor_combination(&[(C64::new(1.0, 0.0), a)])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve_in_place(&self, x: &mut [C64]) {
        assert_eq!(x.len(), self.n);
        let mut m = Mat::<C64>::from_fn(self.n, 1, |i, _| x[i]);
        self.lu.solve_in_place(m.as_mut());
        for (i, v) in x.iter_mut().enumerate() {
            *v = m[(i, 0)];
        }
    }
}
