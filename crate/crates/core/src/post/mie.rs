//! Mie series for plane-wave scattering by a homogeneous sphere centred at
//! the origin, for `E^inc = ẑ exp(i k0 x)`.
//!
//! The series is evaluated in a rotated frame with the propagation along
//! `z'` and the polarization along `x'`: `v' = (v_z, -v_y, v_x)`.

use num_complex::Complex64 as C64;

use super::PostError;
use crate::geom::{CVec, Point};

#[derive(Debug, Clone)]
pub struct MieSolution {
    pub radius: f64,
    pub k0: f64,
    pub eps_r: f64,
    pub mu_r: f64,
    pub n_max: usize,
    /// Scattered electric/magnetic multipole coefficients.
    a: Vec<C64>,
    b: Vec<C64>,
    /// Interior coefficients.
    c: Vec<C64>,
    d: Vec<C64>,
}

/// Riccati-type radial data `(z_n, [ρ z_n]'/ρ)` for `n = 0..=n`.
fn bessel_j(n: usize, x: f64) -> Vec<f64> {
    let start = n + 30 + x as usize;
    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-300;
    for m in (1..=start).rev() {
        vals[m - 1] = (2 * m + 1) as f64 / x * vals[m] - vals[m + 1];
        if vals[m - 1].abs() > 1e250 {
            for v in vals.iter_mut().skip(m - 1) {
                *v *= 1e-250;
            }
        }
    }
    let j0 = x.sin() / x;
    let scale = j0 / vals[0];
    vals.truncate(n + 1);
    vals.iter().map(|v| v * scale).collect()
}

fn bessel_y(n: usize, x: f64) -> Vec<f64> {
    let mut y = vec![-x.cos() / x, -x.cos() / (x * x) - x.sin() / x];
    for m in 1..n {
        let next = (2 * m + 1) as f64 / x * y[m] - y[m - 1];
        y.push(next);
    }
    y.truncate(n + 1);
    y
}

/// `z_n(x)` and `[x z_n(x)]'` for `n = 1..=n_max` (index 0 unused).
fn radial(n_max: usize, x: f64, outgoing: bool) -> (Vec<C64>, Vec<C64>) {
    let j = bessel_j(n_max, x);
    let z: Vec<C64> = if outgoing {
        let y = bessel_y(n_max, x);
        j.iter().zip(&y).map(|(a, b)| C64::new(*a, *b)).collect()
    } else {
        j.iter().map(|a| C64::new(*a, 0.0)).collect()
    };
    let mut dz = vec![C64::new(0.0, 0.0); n_max + 1];
    for n in 1..=n_max {
        dz[n] = x * z[n - 1] - n as f64 * z[n];
    }
    (z, dz)
}

/// Angular functions `π_n`, `τ_n` at `cos θ = mu` for `n = 0..=n_max`.
fn angular(n_max: usize, mu: f64) -> (Vec<f64>, Vec<f64>) {
    let mut pi = vec![0.0; n_max + 1];
    let mut tau = vec![0.0; n_max + 1];
    if n_max >= 1 {
        pi[1] = 1.0;
        tau[1] = mu;
    }
    for n in 2..=n_max {
        let nf = n as f64;
        pi[n] = (2.0 * nf - 1.0) / (nf - 1.0) * mu * pi[n - 1] - nf / (nf - 1.0) * pi[n - 2];
        tau[n] = nf * mu * pi[n] - (nf + 1.0) * pi[n - 1];
    }
    (pi, tau)
}

fn to_rotated(x: Point) -> Point {
    [x[2], -x[1], x[0]]
}

fn from_rotated(v: CVec) -> CVec {
    [v[2], -v[1], v[0]]
}

/// Spherical frame of a rotated-frame point.
struct Frame {
    r: f64,
    cos_t: f64,
    sin_t: f64,
    cos_p: f64,
    sin_p: f64,
}

impl Frame {
    fn new(p: Point) -> Frame {
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        let rho = (p[0] * p[0] + p[1] * p[1]).sqrt();
        let (cos_p, sin_p) = if rho > 0.0 { (p[0] / rho, p[1] / rho) } else { (1.0, 0.0) };
        Frame { r, cos_t: p[2] / r, sin_t: rho / r, cos_p, sin_p }
    }

    /// Cartesian vector from spherical components.
    fn cartesian(&self, er: C64, et: C64, ep: C64) -> CVec {
        let (ct, st, cp, sp) = (self.cos_t, self.sin_t, self.cos_p, self.sin_p);
        [
            er * st * cp + et * ct * cp - ep * sp,
            er * st * sp + et * ct * sp + ep * cp,
            er * ct - et * st,
        ]
    }
}

/// Sum of `Σ E_n (α_n M_{o1n} + β_n N_{e1n})` and `Σ E_n (γ_n M_{e1n} + δ_n N_{o1n})`.
struct Harmonics<'a> {
    z: &'a [C64],
    dz: &'a [C64],
    rho: f64,
    pi: &'a [f64],
    tau: &'a [f64],
    f: &'a Frame,
}

impl Harmonics<'_> {
    fn m_o(&self, n: usize) -> [C64; 3] {
        let z = self.z[n];
        [C64::new(0.0, 0.0), z * self.f.cos_p * self.pi[n], -z * self.f.sin_p * self.tau[n]]
    }

    fn m_e(&self, n: usize) -> [C64; 3] {
        let z = self.z[n];
        [C64::new(0.0, 0.0), -z * self.f.sin_p * self.pi[n], -z * self.f.cos_p * self.tau[n]]
    }

    fn n_e(&self, n: usize) -> [C64; 3] {
        let nn = (n * (n + 1)) as f64;
        let (z, dz) = (self.z[n] / self.rho, self.dz[n] / self.rho);
        [
            z * self.f.cos_p * nn * self.f.sin_t * self.pi[n],
            dz * self.f.cos_p * self.tau[n],
            -dz * self.f.sin_p * self.pi[n],
        ]
    }

    fn n_o(&self, n: usize) -> [C64; 3] {
        let nn = (n * (n + 1)) as f64;
        let (z, dz) = (self.z[n] / self.rho, self.dz[n] / self.rho);
        [
            z * self.f.sin_p * nn * self.f.sin_t * self.pi[n],
            dz * self.f.sin_p * self.tau[n],
            dz * self.f.cos_p * self.pi[n],
        ]
    }
}

fn e_n(n: usize) -> C64 {
    C64::new(0.0, 1.0).powu(n as u32) * ((2 * n + 1) as f64 / (n * (n + 1)) as f64)
}

fn add3(acc: &mut [C64; 3], s: C64, v: [C64; 3]) {
    for i in 0..3 {
        acc[i] += s * v[i];
    }
}

impl MieSolution {
    /// Builds the series with `n_max = ⌈x + 4 x^(1/3) + 2⌉`, `x = k0 a`, and
    /// checks that five extra terms change the far field by less than 1e-10.
    pub fn new(radius: f64, k0: f64, eps_r: f64, mu_r: f64) -> Result<Self, PostError> {
        for (name, v) in [("radius", radius), ("k0", k0), ("eps_r", eps_r), ("mu_r", mu_r)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(PostError::Nonphysical(format!("{name} = {v}")));
            }
        }
        let x = k0 * radius;
        let n_max = (x + 4.0 * x.cbrt() + 2.0).ceil() as usize;
        let sol = Self::with_terms(radius, k0, eps_r, mu_r, n_max);
        let extra = Self::with_terms(radius, k0, eps_r, mu_r, n_max + 5);
        let theta = super::theta_grid(37);
        let f1 = sol.far_field(&theta);
        let f2 = extra.far_field(&theta);
        let num: f64 = f1.iter().zip(&f2).map(|(a, b)| (0..3).map(|i| (a[i] - b[i]).norm_sqr()).sum::<f64>()).sum();
        let den: f64 = f2.iter().map(|b| (0..3).map(|i| b[i].norm_sqr()).sum::<f64>()).sum();
        let change = if den > 0.0 { (num / den).sqrt() } else { num.sqrt() };
        if change > 1e-10 {
            return Err(PostError::MieTruncation(change));
        }
        Ok(sol)
    }

    /// Series truncated at `n_max` terms, without the truncation check.
    pub fn with_terms(radius: f64, k0: f64, eps_r: f64, mu_r: f64, n_max: usize) -> Self {
        let x = k0 * radius;
        let m = (eps_r * mu_r).sqrt();
        let (jx, djx) = radial(n_max, x, false);
        let (hx, dhx) = radial(n_max, x, true);
        let (jm, djm) = radial(n_max, m * x, false);
        let (mu, mu1) = (1.0, mu_r);
        let (mut a, mut b, mut c, mut d) = (vec![C64::new(0.0, 0.0)], vec![C64::new(0.0, 0.0)], vec![C64::new(0.0, 0.0)], vec![C64::new(0.0, 0.0)]);
        for n in 1..=n_max {
            let den_a = mu * m * m * jm[n] * dhx[n] - mu1 * hx[n] * djm[n];
            let den_b = mu1 * jm[n] * dhx[n] - mu * hx[n] * djm[n];
            a.push((mu * m * m * jm[n] * djx[n] - mu1 * jx[n] * djm[n]) / den_a);
            b.push((mu1 * jm[n] * djx[n] - mu * jx[n] * djm[n]) / den_b);
            let wr = mu1 * jx[n] * dhx[n] - mu1 * hx[n] * djx[n];
            c.push(wr / den_b);
            d.push(wr * m / den_a);
        }
        MieSolution { radius, k0, eps_r, mu_r, n_max, a, b, c, d }
    }

    pub fn interior_k(&self) -> f64 {
        self.k0 * (self.eps_r * self.mu_r).sqrt()
    }

    /// Far-field pattern `F` (with `E_s ~ F e^{ik0 r}/r`) at directions
    /// `(cos θ, sin θ, 0)`.
    pub fn far_field(&self, theta: &[f64]) -> Vec<CVec> {
        theta
            .iter()
            .map(|&th| {
                let f = Frame::new(to_rotated([th.cos(), th.sin(), 0.0]));
                let (pi, tau) = angular(self.n_max, f.cos_t);
                let (mut s1, mut s2) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
                for n in 1..=self.n_max {
                    let w = (2 * n + 1) as f64 / (n * (n + 1)) as f64;
                    s1 += w * (self.a[n] * pi[n] + self.b[n] * tau[n]);
                    s2 += w * (self.a[n] * tau[n] + self.b[n] * pi[n]);
                }
                let pre = C64::new(0.0, 1.0 / self.k0);
                let et = pre * f.cos_p * s2;
                let ep = -pre * f.sin_p * s1;
                from_rotated(f.cartesian(C64::new(0.0, 0.0), et, ep))
            })
            .collect()
    }

    pub fn rcs_z(&self, theta: &[f64]) -> Vec<f64> {
        self.far_field(theta).iter().map(|f| f[2].norm()).collect()
    }

    /// Scattered field and its `(1/ik0) curl`, from the exterior expansion
    /// (valid for any `x ≠ 0`, including points slightly inside the sphere).
    pub fn scattered_field_and_curl(&self, x: Point) -> (CVec, CVec) {
        self.expansion(x, false)
    }

    /// Transmitted field and its `(1/ik1) curl`, from the interior expansion.
    pub fn interior_field_and_curl(&self, x: Point) -> (CVec, CVec) {
        self.expansion(x, true)
    }

    /// Incident plus scattered field and `(1/ik0) curl`.
    pub fn exterior_total_field_and_curl(&self, x: Point) -> (CVec, CVec) {
        let (mut e, mut c) = self.expansion(x, false);
        let ph = C64::new(0.0, self.k0 * x[0]).exp();
        e[2] += ph;
        // (1/ik) curl (ẑ e^{ikx}) = x̂ × ẑ e^{ikx} = -ŷ e^{ikx}
        c[1] -= ph;
        (e, c)
    }

    /// Physical total field and scaled curl: exterior total outside the
    /// sphere, transmitted field inside.
    pub fn total_field_and_curl(&self, x: Point) -> (CVec, CVec) {
        if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt() < self.radius {
            self.interior_field_and_curl(x)
        } else {
            self.exterior_total_field_and_curl(x)
        }
    }

    pub fn scattered(&self, x: Point) -> CVec {
        self.expansion(x, false).0
    }

    fn expansion(&self, x: Point, inside: bool) -> (CVec, CVec) {
        let f = Frame::new(to_rotated(x));
        let k = if inside { self.interior_k() } else { self.k0 };
        let rho = k * f.r;
        let (z, dz) = radial(self.n_max, rho, !inside);
        let (pi, tau) = angular(self.n_max, f.cos_t);
        let h = Harmonics { z: &z, dz: &dz, rho, pi: &pi, tau: &tau, f: &f };
        let i = C64::new(0.0, 1.0);
        let mut e = [C64::new(0.0, 0.0); 3];
        let mut cu = [C64::new(0.0, 0.0); 3];
        for n in 1..=self.n_max {
            let en = e_n(n);
            if inside {
                // E = Σ E_n (c_n M_o - i d_n N_e); curl M = k N, curl N = k M.
                add3(&mut e, en * self.c[n], h.m_o(n));
                add3(&mut e, -i * en * self.d[n], h.n_e(n));
                add3(&mut cu, en * self.c[n] / i, h.n_o(n));
                add3(&mut cu, -en * self.d[n], h.m_e(n));
            } else {
                // E = Σ E_n (i a_n N_e - b_n M_o).
                add3(&mut e, i * en * self.a[n], h.n_e(n));
                add3(&mut e, -en * self.b[n], h.m_o(n));
                add3(&mut cu, en * self.a[n], h.m_e(n));
                add3(&mut cu, -en * self.b[n] / i, h.n_o(n));
            }
        }
        (from_rotated(f.cartesian(e[0], e[1], e[2])), from_rotated(f.cartesian(cu[0], cu[1], cu[2])))
    }

    /// Incident field from its multipole expansion (validation helper).
    pub fn incident_expansion(&self, x: Point) -> CVec {
        let f = Frame::new(to_rotated(x));
        let rho = self.k0 * f.r;
        let (z, dz) = radial(self.n_max + 20, rho, false);
        let (pi, tau) = angular(self.n_max + 20, f.cos_t);
        let h = Harmonics { z: &z, dz: &dz, rho, pi: &pi, tau: &tau, f: &f };
        let mut e = [C64::new(0.0, 0.0); 3];
        for n in 1..=self.n_max + 20 {
            add3(&mut e, e_n(n), h.m_o(n));
            add3(&mut e, -C64::new(0.0, 1.0) * e_n(n), h.n_e(n));
        }
        from_rotated(f.cartesian(e[0], e[1], e[2]))
    }
}
