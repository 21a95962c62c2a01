use super::PostError;

/// `n` equispaced angles on `[0, π]`, both ends included.
pub fn theta_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| std::f64::consts::PI * i as f64 / (n - 1) as f64).collect()
}

/// Trapezoidal integral of samples `f` on `grid`.
pub fn trapezoid(grid: &[f64], f: &[f64]) -> f64 {
    grid.windows(2).zip(f.windows(2)).map(|(g, v)| 0.5 * (g[1] - g[0]) * (v[0] + v[1])).sum()
}

/// `‖a - b‖₂ / ‖b‖₂` with trapezoidal integration on `grid`.
pub fn rel_l2(grid: &[f64], a: &[f64], b: &[f64]) -> Result<f64, PostError> {
    if a.len() != grid.len() || b.len() != grid.len() {
        return Err(PostError::GridMismatch(a.len(), b.len()));
    }
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).collect();
    let refn: Vec<f64> = b.iter().map(|y| y * y).collect();
    let den = trapezoid(grid, &refn);
    if den == 0.0 {
        return Err(PostError::ZeroDenominator);
    }
    Ok((trapezoid(grid, &diff) / den).sqrt())
}

/// Least-squares slope of `log(y)` against `log(x)`.
pub fn fit_loglog_slope(x: &[f64], y: &[f64]) -> Result<f64, PostError> {
    if x.len() != y.len() {
        return Err(PostError::GridMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(PostError::TooFewSamples(x.len()));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
