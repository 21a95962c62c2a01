//! Galerkin assembly of the electric (T) and magnetic (K) field operators.
//!
//! Both forms are tested in the twisted pairing, which for RWG trial and
//! rotated RWG test functions reduces to
//!
//! ```text
//! T_mn = ik ∬ G φ_m(x)·φ_n(y) + (1/ik) ∬ G div φ_m div φ_n
//! K_mn = ∬ φ_m(x) · (∇_x G × φ_n(y))
//! ```
//!
//! Both matrices are complex symmetric, so only pairs `t1 <= t2` of surface
//! triangles are integrated.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::dense::{DenseBlock, OperatorLabel, Precision};
use super::kernel::kernel_and_gradient;
use super::BioError;
use crate::geom::{self, Point};
use crate::quadrature::{gauss_triangle, singular_pair_rule, Adjacency, PairRule, QuadratureOrders};
use crate::spaces::{SurfaceTriangle, TraceSpace};

type Local = [[C64; 3]; 3];

const ZERO: Local = [[C64::new(0.0, 0.0); 3]; 3];

/// Quadrature nodes of one triangle with basis values cached.
struct TriPoints {
    x: Vec<Point>,
    w: Vec<f64>,
    phi: Vec<[Point; 3]>,
}

impl TriPoints {
    fn new(tri: &SurfaceTriangle, order: usize) -> Result<Self, BioError> {
        let rule = gauss_triangle(order)?;
        let mut out = TriPoints { x: Vec::new(), w: Vec::new(), phi: Vec::new() };
        for q in 0..rule.len() {
            let x = tri.point(rule.barycentric(q));
            out.phi.push([tri.basis(0, x), tri.basis(1, x), tri.basis(2, x)]);
            out.x.push(x);
            out.w.push(rule.weights[q] * 2.0 * tri.area);
        }
        Ok(out)
    }
}

/// Partial sums over quadrature points for one triangle pair.
struct PairSums {
    vector: Local,
    scalar: C64,
    magnetic: Local,
}

impl PairSums {
    fn new() -> Self {
        PairSums { vector: ZERO, scalar: C64::new(0.0, 0.0), magnetic: ZERO }
    }

    #[inline]
    fn add(&mut self, k: f64, x: Point, y: Point, w: f64, px: &[Point; 3], py: &[Point; 3], want_k: bool) {
        let d = geom::sub(x, y);
        let r = geom::norm(d);
        let (g, c) = kernel_and_gradient(k, r);
        let gw = g * w;
        self.scalar += gw;
        for a in 0..3 {
            for b in 0..3 {
                self.vector[a][b] += gw * geom::dot(px[a], py[b]);
            }
        }
        if want_k {
            let cw = c * w;
            for b in 0..3 {
                let t = geom::cross(d, py[b]);
                for a in 0..3 {
                    self.magnetic[a][b] += cw * geom::dot(px[a], t);
                }
            }
        }
    }

    fn finish(&self, k: f64, t1: &SurfaceTriangle, t2: &SurfaceTriangle) -> (Local, Local) {
        let mut t = ZERO;
        if k > 0.0 {
            let ik = C64::new(0.0, k);
            for a in 0..3 {
                for b in 0..3 {
                    let dd = t1.divergence(a) * t2.divergence(b);
                    t[a][b] = ik * self.vector[a][b] + self.scalar * dd / ik;
                }
            }
        }
        (t, self.magnetic)
    }
}

/// Assembly options.
#[derive(Debug, Clone, Copy)]
pub struct AssemblyOptions {
    pub orders: QuadratureOrders,
    pub precision: Precision,
    pub efio: bool,
    pub mfio: bool,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        AssemblyOptions { orders: QuadratureOrders::default(), precision: Precision::Double, efio: true, mfio: true }
    }
}

struct Context<'a> {
    space: &'a TraceSpace,
    k: f64,
    want_k: bool,
    regular: Vec<TriPoints>,
    near: Vec<TriPoints>,
    singular: [PairRule; 3],
    near_distance: f64,
    centroids: Vec<Point>,
}

fn shared_vertices(a: &[usize; 3], b: &[usize; 3]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, va) in a.iter().enumerate() {
        if let Some(j) = b.iter().position(|vb| vb == va) {
            out.push((i, j));
        }
    }
    out
}

/// Local vertex permutations putting the shared entity first in both triangles.
fn singular_frames(shared: &[(usize, usize)]) -> ([usize; 3], [usize; 3]) {
    match shared.len() {
        1 => {
            let (i, j) = shared[0];
            ([i, (i + 1) % 3, (i + 2) % 3], [j, (j + 1) % 3, (j + 2) % 3])
        }
        2 => {
            let (i0, j0) = shared[0];
            let (i1, j1) = shared[1];
            ([i0, i1, 3 - i0 - i1], [j0, j1, 3 - j0 - j1])
        }
        _ => ([0, 1, 2], [0, 1, 2]),
    }
}

fn frame_point(tri: &SurfaceTriangle, perm: [usize; 3], st: [f64; 2]) -> Point {
    let v = |i: usize| tri.vertices[perm[i]];
    let (s, t) = (st[0], st[1]);
    let l0 = 1.0 - s - t;
    [
        l0 * v(0)[0] + s * v(1)[0] + t * v(2)[0],
        l0 * v(0)[1] + s * v(1)[1] + t * v(2)[1],
        l0 * v(0)[2] + s * v(1)[2] + t * v(2)[2],
    ]
}

impl<'a> Context<'a> {
    fn new(space: &'a TraceSpace, k: f64, options: &AssemblyOptions) -> Result<Self, BioError> {
        let o = options.orders;
        let regular = space.triangles.iter().map(|t| TriPoints::new(t, o.regular)).collect::<Result<Vec<_>, _>>()?;
        let near = space.triangles.iter().map(|t| TriPoints::new(t, o.near)).collect::<Result<Vec<_>, _>>()?;
        let singular = [
            singular_pair_rule(Adjacency::Vertex, o.singular)?,
            singular_pair_rule(Adjacency::Edge, o.singular)?,
            singular_pair_rule(Adjacency::Coincident, o.singular)?,
        ];
        Ok(Context {
            space,
            k,
            want_k: options.mfio,
            regular,
            near,
            singular,
            near_distance: 2.0 * space.mean_diameter(),
            centroids: space.triangles.iter().map(|t| t.centroid()).collect(),
        })
    }

    fn pair(&self, i: usize, j: usize) -> (Local, Local) {
        let t1 = &self.space.triangles[i];
        let t2 = &self.space.triangles[j];
        let shared = if i == j { vec![(0, 0), (1, 1), (2, 2)] } else { shared_vertices(&t1.vertex_ids, &t2.vertex_ids) };
        let mut sums = PairSums::new();
        if shared.is_empty() {
            let cache = if geom::dist(self.centroids[i], self.centroids[j]) < self.near_distance { &self.near } else { &self.regular };
            let (p, q) = (&cache[i], &cache[j]);
            for a in 0..p.x.len() {
                for b in 0..q.x.len() {
                    sums.add(self.k, p.x[a], q.x[b], p.w[a] * q.w[b], &p.phi[a], &q.phi[b], self.want_k);
                }
            }
        } else {
            let rule = &self.singular[shared.len().min(3) - 1];
            let (f1, f2) = singular_frames(&shared);
            let scale = 4.0 * t1.area * t2.area;
            for q in 0..rule.len() {
                let x = frame_point(t1, f1, rule.x[q]);
                let y = frame_point(t2, f2, rule.y[q]);
                let px = [t1.basis(0, x), t1.basis(1, x), t1.basis(2, x)];
                let py = [t2.basis(0, y), t2.basis(1, y), t2.basis(2, y)];
                sums.add(self.k, x, y, rule.weights[q] * scale, &px, &py, self.want_k);
            }
        }
        sums.finish(self.k, t1, t2)
    }
}

/// Triangles handled per parallel wave; bounds the buffered local blocks.
const WAVE: usize = 32;

/// Assembles T and/or K on one space at real wavenumber `k`.
///
/// T requires `k > 0`; K alone may be assembled at `k = 0`.
pub fn assemble_operators(
    space: &TraceSpace,
    k: f64,
    options: &AssemblyOptions,
) -> Result<(Option<DenseBlock>, Option<DenseBlock>), BioError> {
    if !(k >= 0.0) || !k.is_finite() || (options.efio && k == 0.0) {
        return Err(BioError::InvalidWavenumber(k));
    }
    let ctx = Context::new(space, k, options)?;
    let n = space.dim();
    let nt = space.triangles.len();
    let mut t_block = options.efio.then(|| DenseBlock::zeros(OperatorLabel::T, n, n, options.precision));
    let mut k_block = options.mfio.then(|| DenseBlock::zeros(OperatorLabel::K, n, n, options.precision));
    let mut start = 0;
    while start < nt {
        let end = (start + WAVE).min(nt);
        let rows: Vec<Vec<(Local, Local)>> =
            (start..end).into_par_iter().map(|i| (i..nt).map(|j| ctx.pair(i, j)).collect()).collect();
        for (offset, row) in rows.iter().enumerate() {
            let i = start + offset;
            let t1 = &space.triangles[i];
            for (jo, (lt, lk)) in row.iter().enumerate() {
                let j = i + jo;
                let t2 = &space.triangles[j];
                for a in 0..3 {
                    for b in 0..3 {
                        for (block, val) in [(&mut t_block, lt[a][b]), (&mut k_block, lk[a][b])] {
                            if let Some(block) = block.as_mut() {
                                if !val.re.is_finite() || !val.im.is_finite() {
                                    return Err(BioError::NonFinite { test: t1.skeleton, trial: t2.skeleton });
                                }
                                block.add(t1.dofs[a], t2.dofs[b], val);
                                if i != j {
                                    block.add(t2.dofs[b], t1.dofs[a], val);
                                }
                            }
                        }
                    }
                }
            }
        }
        start = end;
    }
    Ok((t_block, k_block))
}

/// Electric field operator T at wavenumber `k > 0`.
pub fn assemble_efio(space: &TraceSpace, k: f64, orders: QuadratureOrders) -> Result<DenseBlock, BioError> {
    let options = AssemblyOptions { orders, efio: true, mfio: false, ..Default::default() };
    Ok(assemble_operators(space, k, &options)?.0.expect("requested"))
}

/// Magnetic field operator K at wavenumber `k >= 0`.
pub fn assemble_mfio(space: &TraceSpace, k: f64, orders: QuadratureOrders) -> Result<DenseBlock, BioError> {
    let options = AssemblyOptions { orders, efio: false, mfio: true, ..Default::default() };
    Ok(assemble_operators(space, k, &options)?.1.expect("requested"))
}
