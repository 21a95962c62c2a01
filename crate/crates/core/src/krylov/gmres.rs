use std::io::Write;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{norm2, KrylovError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GmresOptions {
    pub tol: f64,
    pub maxit: usize,
}

impl Default for GmresOptions {
    fn default() -> Self {
        GmresOptions { tol: 1e-5, maxit: 2000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(skip)]
    pub solution: Vec<C64>,
    /// Relative (preconditioned) residual after each iteration; entry 0 is the
    /// initial residual 1.
    pub history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub seconds: f64,
}

/// Loss-of-orthogonality threshold triggering a second Gram–Schmidt pass.
const REORTH: f64 = 0.7;

/// Full GMRES with zero initial guess and left preconditioning.
///
/// Solves `P A x = P b`; the reported residual is `|P(b - A x)| / |P b|`.
pub fn gmres(
    apply: &dyn Fn(&[C64], &mut [C64]),
    rhs: &[C64],
    options: GmresOptions,
    precond: Option<&dyn Fn(&[C64], &mut [C64])>,
) -> Result<SolveReport, KrylovError> {
    let start = Instant::now();
    let n = rhs.len();
    if !(options.tol > 0.0) {
        return Err(KrylovError::InvalidTolerance(options.tol));
    }
    let zero = C64::new(0.0, 0.0);
    let prec = |x: &[C64]| -> Vec<C64> {
        match precond {
            Some(p) => {
                let mut y = vec![zero; n];
                p(x, &mut y);
                y
            }
            None => x.to_vec(),
        }
    };
    let r0 = prec(rhs);
    if r0.len() != n {
        return Err(KrylovError::Dimension { expected: n, got: r0.len() });
    }
    let beta = norm2(&r0);
    let mut report = SolveReport { solution: vec![zero; n], history: vec![1.0], iterations: 0, converged: false, seconds: 0.0 };
    if beta == 0.0 {
        report.converged = true;
        report.history[0] = 0.0;
        return Ok(report);
    }
    if !beta.is_finite() {
        return Err(KrylovError::NonFinite(0));
    }
    let mut basis: Vec<Vec<C64>> = vec![r0.iter().map(|v| v / beta).collect()];
    // Columns of the Hessenberg matrix after Givens rotations.
    let mut hess: Vec<Vec<C64>> = Vec::new();
    let mut rotations: Vec<(f64, C64)> = Vec::new();
    let mut g = vec![C64::new(beta, 0.0)];
    let mut work = vec![zero; n];
    for j in 0..options.maxit {
        work.iter_mut().for_each(|v| *v = zero);
        apply(&basis[j], &mut work);
        let mut w = prec(&work);
        if w.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(KrylovError::NonFinite(j + 1));
        }
        let mut h = vec![zero; j + 2];
        let before = norm2(&w);
        for (i, v) in basis.iter().enumerate() {
            let c: C64 = v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
            h[i] = c;
            w.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
        }
        let mut after = norm2(&w);
        if after < REORTH * before {
            for (i, v) in basis.iter().enumerate() {
                let c: C64 = v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                h[i] += c;
                w.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
            }
            after = norm2(&w);
        }
        h[j + 1] = C64::new(after, 0.0);
        for (i, &(c, s)) in rotations.iter().enumerate() {
            let (a, b) = (h[i], h[i + 1]);
            h[i] = c * a + s * b;
            h[i + 1] = -s.conj() * a + c * b;
        }
        let (a, b) = (h[j], h[j + 1]);
        let denom = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if denom == 0.0 {
            return Err(KrylovError::Breakdown(j + 1));
        }
        let (c, s) = if a.norm() == 0.0 { (0.0, C64::new(1.0, 0.0)) } else { (a.norm() / denom, (a / a.norm()) * b.conj() / denom) };
        h[j] = c * a + s * b;
        h[j + 1] = zero;
        rotations.push((c, s));
        let gj = g[j];
        g[j] = c * gj;
        g.push(-s.conj() * gj);
        hess.push(h);
        let rel = g[j + 1].norm() / beta;
        report.history.push(rel);
        report.iterations = j + 1;
        let happy = after <= 1e-14 * before.max(f64::MIN_POSITIVE);
        if rel <= options.tol || happy {
            report.converged = rel <= options.tol || happy;
            break;
        }
        basis.push(w.iter().map(|v| v / after).collect());
    }
    // Back substitution for the least-squares coefficients.
    let m = hess.len();
    let mut y = vec![zero; m];
    for i in (0..m).rev() {
        let mut acc = g[i];
        for k in (i + 1)..m {
            acc -= hess[k][i] * y[k];
        }
        y[i] = acc / hess[i][i];
    }
    for (k, v) in basis.iter().take(m).enumerate() {
        report.solution.iter_mut().zip(v).for_each(|(x, b)| *x += y[k] * b);
    }
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Writes `iteration,relative_residual` rows.
pub fn write_history_csv(path: &Path, history: &[f64]) -> Result<(), KrylovError> {
    let err = |e: std::io::Error| KrylovError::Io { path: path.display().to_string(), message: e.to_string() };
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).map_err(err)?);
    writeln!(f, "iteration,relative_residual").map_err(err)?;
    for (i, r) in history.iter().enumerate() {
        writeln!(f, "{i},{r:.12e}").map_err(err)?;
    }
    f.flush().map_err(err)
}
