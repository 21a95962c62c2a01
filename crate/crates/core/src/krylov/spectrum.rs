use faer::Mat;
use num_complex::Complex64 as C64;

use super::KrylovError;

pub const DEFAULT_SPECTRUM_CAP: usize = 8000;

/// Dense matrix of a linear operator, built column by column.
pub fn materialize(n: usize, apply: &dyn Fn(&[C64], &mut [C64]), cap: usize) -> Result<Mat<C64>, KrylovError> {
    if n > cap {
        return Err(KrylovError::CapExceeded { size: n, cap });
    }
    let mut out = Mat::<C64>::zeros(n, n);
    let mut e = vec![C64::new(0.0, 0.0); n];
    let mut col = vec![C64::new(0.0, 0.0); n];
    for j in 0..n {
        e[j] = C64::new(1.0, 0.0);
        col.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        apply(&e, &mut col);
        for i in 0..n {
            out[(i, j)] = col[i];
        }
        e[j] = C64::new(0.0, 0.0);
    }
    Ok(out)
}

/// All eigenvalues of a dense matrix.
pub fn spectrum(a: &Mat<C64>, cap: usize) -> Result<Vec<C64>, KrylovError> {
    if a.nrows() != a.ncols() {
        return Err(KrylovError::NotSquare(a.nrows(), a.ncols()));
    }
    if a.nrows() > cap {
        return Err(KrylovError::CapExceeded { size: a.nrows(), cap });
    }
    a.eigenvalues().map_err(|_| KrylovError::Eigen)
}
