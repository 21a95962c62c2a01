//! Stratton–Chu representation and far-field pattern from surface traces.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::PostError;
use crate::bio::kernel_and_gradient;
use crate::geom::{self, CVec, Point};
use crate::quadrature::gauss_triangle;
use crate::spaces::{eval_expansion, TraceSpace};

/// Triangle rule order for field and far-field integrals.
pub const FAR_FIELD_ORDER: usize = 4;

/// Cauchy data of one subdomain: coefficients of the electric trace and of
/// the scaled magnetic trace, with the subdomain wavenumber and admittance.
#[derive(Debug, Clone, Copy)]
pub struct TraceData<'a> {
    pub space: &'a TraceSpace,
    pub electric: &'a [C64],
    pub magnetic: &'a [C64],
    pub k: f64,
    pub rho: f64,
}

/// Quadrature samples of the two surface densities.
struct Densities {
    y: Vec<Point>,
    w: Vec<f64>,
    a: Vec<CVec>,
    b: Vec<CVec>,
    div_b: Vec<C64>,
}

fn densities(tr: &TraceData, order: usize) -> Result<Densities, PostError> {
    let n = tr.space.dim();
    if tr.electric.len() != n || tr.magnetic.len() != n {
        return Err(PostError::Dimension { expected: n, got: tr.electric.len().min(tr.magnetic.len()) });
    }
    let rule = gauss_triangle(order)?;
    let mut d = Densities { y: vec![], w: vec![], a: vec![], b: vec![], div_b: vec![] };
    for (t, tri) in tr.space.triangles.iter().enumerate() {
        for q in 0..rule.len() {
            let bary = rule.barycentric(q);
            let (a, _) = eval_expansion(tr.space, tr.electric, t, bary);
            let (b, div_b) = eval_expansion(tr.space, tr.magnetic, t, bary);
            d.y.push(tri.point(bary));
            d.w.push(rule.weights[q] * 2.0 * tri.area);
            d.a.push(a);
            d.b.push(geom::cscale(C64::new(1.0 / tr.rho, 0.0), &b));
            d.div_b.push(div_b / tr.rho);
        }
    }
    Ok(d)
}

fn too_close(space: &TraceSpace, x: Point) -> bool {
    space.triangles.iter().any(|t| geom::dist(x, t.centroid()) < t.diameter())
}

/// Field represented by the traces at points of the subdomain:
/// `E = curl S(a) + ik S(b) - (1/ik) ∇ S(div b)` with `a` the electric trace
/// and `b` the magnetic trace divided by the admittance.
pub fn stratton_chu_eval(tr: &TraceData, points: &[Point]) -> Result<Vec<CVec>, PostError> {
    if let Some(p) = points.iter().find(|p| too_close(tr.space, **p)) {
        return Err(PostError::TooClose { point: *p });
    }
    let d = densities(tr, FAR_FIELD_ORDER)?;
    let ik = C64::new(0.0, tr.k);
    Ok(points
        .par_iter()
        .map(|&x| {
            let mut e = [C64::new(0.0, 0.0); 3];
            for q in 0..d.y.len() {
                let r = geom::sub(x, d.y[q]);
                let (g, c) = kernel_and_gradient(tr.k, geom::norm(r));
                let grad = geom::cscale(c * d.w[q], &geom::to_c(r));
                let curl = geom::ccross(&grad, &d.a[q]);
                for i in 0..3 {
                    e[i] += curl[i] + ik * g * d.w[q] * d.b[q][i] - grad[i] * d.div_b[q] / ik;
                }
            }
            e
        })
        .collect())
}

/// Far-field samples in the plane `z = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldSamples {
    pub theta: Vec<f64>,
    pub field: Vec<CVec>,
}

impl FarFieldSamples {
    /// `|F_z|` per angle.
    pub fn rcs_z(&self) -> Vec<f64> {
        self.field.iter().map(|f| f[2].norm()).collect()
    }
}

/// Far-field pattern `F` (with `E ~ F e^{ikr}/r`) of the exterior traces at
/// directions `(cos θ, sin θ, 0)`.
pub fn far_field(tr: &TraceData, theta: &[f64]) -> Result<FarFieldSamples, PostError> {
    if tr.space.subdomain() != 0 {
        return Err(PostError::InteriorFarField(tr.space.subdomain()));
    }
    let d = densities(tr, FAR_FIELD_ORDER)?;
    let k = tr.k;
    let field = theta
        .par_iter()
        .map(|&th| {
            let dir = [th.cos(), th.sin(), 0.0];
            let mut a = [C64::new(0.0, 0.0); 3];
            let mut b = [C64::new(0.0, 0.0); 3];
            for q in 0..d.y.len() {
                let ph = C64::new(0.0, -k * geom::dot(dir, d.y[q])).exp() * d.w[q];
                for i in 0..3 {
                    a[i] += ph * d.a[q][i];
                    b[i] += ph * d.b[q][i];
                }
            }
            let dc = geom::to_c(dir);
            let xa = geom::ccross(&dc, &a);
            let db = geom::cdot(&dc, &b);
            let pre = C64::new(0.0, k / (4.0 * PI));
            [0, 1, 2].map(|i| pre * (xa[i] + b[i] - dc[i] * db))
        })
        .collect();
    Ok(FarFieldSamples { theta: theta.to_vec(), field })
}

/// Whether `x` lies inside the closed surface of `space`, by the solid angle
/// it subtends (outward normals give +4π inside bounded regions).
pub fn point_in_surface(space: &TraceSpace, x: Point) -> bool {
    let mut omega = 0.0;
    for t in &space.triangles {
        let [a, b, c] = t.vertices;
        let (a, mut b, mut c) = (geom::sub(a, x), geom::sub(b, x), geom::sub(c, x));
        // Orient the stored corners consistently with the effective normal.
        let (n, _) = geom::triangle_normal_area(a, b, c);
        if geom::dot(n, t.normal) < 0.0 {
            std::mem::swap(&mut b, &mut c);
        }
        let (la, lb, lc) = (geom::norm(a), geom::norm(b), geom::norm(c));
        let num = geom::dot(a, geom::cross(b, c));
        let den = la * lb * lc + geom::dot(a, b) * lc + geom::dot(a, c) * lb + geom::dot(b, c) * la;
        omega += 2.0 * num.atan2(den);
    }
    omega.abs() > 2.0 * PI
}

/// Total field on a grid: in the exterior the incident field plus the field
/// of the exterior traces, inside subdomain `i` the field of its traces.
/// Points too close to a surface yield `None`.
pub fn near_field_grid(
    traces: &[TraceData],
    incident: &(dyn Fn(Point) -> CVec + Sync),
    points: &[Point],
) -> Vec<Option<CVec>> {
    points
        .iter()
        .map(|&x| {
            let owner = traces.iter().skip(1).position(|t| point_in_surface(t.space, x)).map(|i| i + 1).unwrap_or(0);
            let tr = &traces[owner];
            let field = stratton_chu_eval(tr, &[x]).ok()?[0];
            Some(if owner == 0 { geom::cadd(&field, &incident(x)) } else { field })
        })
        .collect()
}
