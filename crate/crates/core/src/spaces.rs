//! RWG trace spaces over closed subdomain boundaries and the twisted pairing.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::geom::{self, Point};
use crate::quadrature::gauss_triangle;
use crate::skeleton::{SkeletonError, SkeletonMesh, SubdomainSurface};
use crate::sparse::CsrMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("open surface: edge {edge:?} of subdomain {subdomain} has {count} triangles")]
    OpenSurface { subdomain: usize, edge: (usize, usize), count: usize },
    #[error("triangle {triangle} is not adjacent to dof {dof}")]
    NotAdjacent { dof: usize, triangle: usize },
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
}

/// Geometry of one surface triangle as seen from the owning subdomain.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceTriangle {
    /// Skeleton triangle id.
    pub skeleton: usize,
    /// Skeleton vertex ids in stored winding order.
    pub vertex_ids: [usize; 3],
    pub vertices: [Point; 3],
    /// Outward normal of the owning subdomain.
    pub normal: Point,
    pub area: f64,
    /// Dof attached to the edge opposite local vertex `k`.
    pub dofs: [usize; 3],
    /// RWG sign (+1 / -1) of that dof on this triangle.
    pub signs: [f64; 3],
}

impl SurfaceTriangle {
    /// Point with barycentric coordinates `l` (weights of the three vertices).
    pub fn point(&self, l: [f64; 3]) -> Point {
        let [a, b, c] = self.vertices;
        [
            l[0] * a[0] + l[1] * b[0] + l[2] * c[0],
            l[0] * a[1] + l[1] * b[1] + l[2] * c[1],
            l[0] * a[2] + l[1] * b[2] + l[2] * c[2],
        ]
    }

    /// Point at reference coordinates `(s, t)`.
    pub fn point_st(&self, st: [f64; 2]) -> Point {
        self.point([1.0 - st[0] - st[1], st[0], st[1]])
    }

    /// Edge length opposite local vertex `k`.
    pub fn edge_length(&self, k: usize) -> f64 {
        geom::dist(self.vertices[(k + 1) % 3], self.vertices[(k + 2) % 3])
    }

    /// Value of the local RWG function `k` at `x` (must lie on the triangle).
    pub fn basis(&self, k: usize, x: Point) -> Point {
        let c = self.signs[k] * self.edge_length(k) / (2.0 * self.area);
        geom::scale(c, geom::sub(x, self.vertices[k]))
    }

    /// Surface divergence of the local RWG function `k`.
    pub fn divergence(&self, k: usize) -> f64 {
        self.signs[k] * self.edge_length(k) / self.area
    }

    pub fn centroid(&self) -> Point {
        geom::centroid(self.vertices[0], self.vertices[1], self.vertices[2])
    }

    pub fn diameter(&self) -> f64 {
        (0..3).map(|k| self.edge_length(k)).fold(0.0, f64::max)
    }
}

/// One edge degree of freedom.
#[derive(Debug, Clone, PartialEq)]
pub struct Dof {
    /// Skeleton vertex ids `(min, max)`.
    pub edge: (usize, usize),
    pub length: f64,
    /// `(local triangle, local opposite vertex)` for the plus and minus triangle.
    pub support: [(usize, usize); 2],
}

/// Lowest-order RWG space on a closed subdomain boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSpace {
    pub surface: SubdomainSurface,
    pub triangles: Vec<SurfaceTriangle>,
    pub dofs: Vec<Dof>,
}

impl TraceSpace {
    pub fn subdomain(&self) -> usize {
        self.surface.index
    }

    pub fn dim(&self) -> usize {
        self.dofs.len()
    }

    /// Local triangle index of skeleton triangle `t`, if on this surface.
    pub fn local_triangle(&self, t: usize) -> Option<usize> {
        self.surface.triangles.binary_search(&t).ok()
    }

    pub fn mean_diameter(&self) -> f64 {
        self.triangles.iter().map(|t| t.diameter()).sum::<f64>() / self.triangles.len() as f64
    }
}

/// Builds the RWG space; dofs are ordered by `(min vertex id, max vertex id)`.
/// The plus triangle of each edge is the one with the smaller skeleton id, so
/// spaces sharing triangles carry identical basis functions there.
pub fn build_trace_space(mesh: &SkeletonMesh, surface: &SubdomainSurface) -> Result<TraceSpace, SpaceError> {
    let mut edges: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (local, &t) in surface.triangles.iter().enumerate() {
        let tri = mesh.triangles[t];
        for k in 0..3 {
            let (a, b) = (tri[(k + 1) % 3], tri[(k + 2) % 3]);
            edges.entry((a.min(b), a.max(b))).or_default().push((local, k));
        }
    }
    let mut triangles: Vec<SurfaceTriangle> = surface
        .triangles
        .iter()
        .enumerate()
        .map(|(local, &t)| {
            let vertex_ids = mesh.triangles[t];
            let vertices = mesh.corners(t);
            let (n, area) = geom::triangle_normal_area(vertices[0], vertices[1], vertices[2]);
            SurfaceTriangle {
                skeleton: t,
                vertex_ids,
                vertices,
                normal: geom::scale(f64::from(surface.swaps[local]), n),
                area,
                dofs: [usize::MAX; 3],
                signs: [0.0; 3],
            }
        })
        .collect();
    let mut dofs = Vec::with_capacity(edges.len());
    for (edge, list) in edges {
        if list.len() != 2 {
            return Err(SpaceError::OpenSurface { subdomain: surface.index, edge, count: list.len() });
        }
        // Surface triangles are ascending in skeleton id, so list[0] is the plus side.
        let id = dofs.len();
        for (side, &(local, k)) in list.iter().enumerate() {
            triangles[local].dofs[k] = id;
            triangles[local].signs[k] = if side == 0 { 1.0 } else { -1.0 };
        }
        dofs.push(Dof {
            edge,
            length: geom::dist(mesh.vertices[edge.0], mesh.vertices[edge.1]),
            support: [list[0], list[1]],
        });
    }
    Ok(TraceSpace { surface: surface.clone(), triangles, dofs })
}

/// RWG value and surface divergence of `dof` on local triangle `triangle` at
/// barycentric coordinates `bary` (weights of the triangle's stored vertices).
pub fn eval_basis(space: &TraceSpace, dof: usize, triangle: usize, bary: [f64; 3]) -> Result<(Point, f64), SpaceError> {
    let tri = space.triangles.get(triangle).ok_or(SpaceError::NotAdjacent { dof, triangle })?;
    let k = (0..3).find(|&k| tri.dofs[k] == dof).ok_or(SpaceError::NotAdjacent { dof, triangle })?;
    let x = tri.point(bary);
    Ok((tri.basis(k, x), tri.divergence(k)))
}

/// Local 3x3 matrix `a[m][n] = ∫_T φ_n · (normal × φ_m)` (exactly antisymmetric).
pub fn local_twisted(tri: &SurfaceTriangle, normal: Point) -> [[f64; 3]; 3] {
    let rule = gauss_triangle(2).expect("order 2 rule");
    let mut a = [[0.0; 3]; 3];
    for q in 0..rule.len() {
        let x = tri.point(rule.barycentric(q));
        let w = rule.weights[q] * 2.0 * tri.area;
        let phi: Vec<Point> = (0..3).map(|k| tri.basis(k, x)).collect();
        for m in 0..3 {
            let rot = geom::cross(normal, phi[m]);
            for n in (m + 1)..3 {
                a[m][n] += w * geom::dot(phi[n], rot);
            }
        }
    }
    for m in 0..3 {
        for n in (m + 1)..3 {
            a[n][m] = -a[m][n];
        }
    }
    a
}

/// Twisted pairing `G_mn = ∫ φ_n · (n × φ_m)` with the outward normal of the space.
pub fn build_pairing(space: &TraceSpace) -> CsrMatrix {
    let mut trip = Vec::with_capacity(9 * space.triangles.len());
    for tri in &space.triangles {
        let a = local_twisted(tri, tri.normal);
        for m in 0..3 {
            for n in 0..3 {
                if m != n {
                    trip.push((tri.dofs[m], tri.dofs[n], a[m][n]));
                }
            }
        }
    }
    CsrMatrix::from_triplets(space.dim(), space.dim(), trip)
}

/// RWG mass matrix `∫ φ_m · φ_n`.
pub fn build_mass(space: &TraceSpace) -> CsrMatrix {
    let rule = gauss_triangle(2).expect("order 2 rule");
    let mut trip = Vec::with_capacity(9 * space.triangles.len());
    for tri in &space.triangles {
        let mut a = [[0.0; 3]; 3];
        for q in 0..rule.len() {
            let x = tri.point(rule.barycentric(q));
            let w = rule.weights[q] * 2.0 * tri.area;
            let phi: Vec<Point> = (0..3).map(|k| tri.basis(k, x)).collect();
            for m in 0..3 {
                for n in 0..3 {
                    a[m][n] += w * geom::dot(phi[m], phi[n]);
                }
            }
        }
        for m in 0..3 {
            for n in 0..3 {
                trip.push((tri.dofs[m], tri.dofs[n], a[m][n]));
            }
        }
    }
    CsrMatrix::from_triplets(space.dim(), space.dim(), trip)
}

/// Divergence stiffness matrix `∫ div φ_m div φ_n`.
pub fn build_div_div(space: &TraceSpace) -> CsrMatrix {
    let mut trip = Vec::with_capacity(9 * space.triangles.len());
    for tri in &space.triangles {
        for m in 0..3 {
            for n in 0..3 {
                trip.push((tri.dofs[m], tri.dofs[n], tri.divergence(m) * tri.divergence(n) * tri.area));
            }
        }
    }
    CsrMatrix::from_triplets(space.dim(), space.dim(), trip)
}

/// Test functional used when projecting a tangential field onto a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Testing {
    /// `∫ u · φ_m`
    L2,
    /// `∫ u · (n × φ_m)`
    Twisted,
}

/// Moments of the complex tangential field `u` against every basis function,
/// integrated with a triangle rule of the given order.
pub fn field_moments(
    space: &TraceSpace,
    order: usize,
    testing: Testing,
    u: &(dyn Fn(Point, Point) -> [C64; 3] + Sync),
) -> Result<Vec<C64>, crate::quadrature::QuadratureError> {
    let rule = gauss_triangle(order)?;
    let mut out = vec![C64::new(0.0, 0.0); space.dim()];
    for tri in &space.triangles {
        for q in 0..rule.len() {
            let x = tri.point(rule.barycentric(q));
            let w = rule.weights[q] * 2.0 * tri.area;
            let val = u(x, tri.normal);
            for k in 0..3 {
                let phi = match testing {
                    Testing::L2 => tri.basis(k, x),
                    Testing::Twisted => geom::cross(tri.normal, tri.basis(k, x)),
                };
                out[tri.dofs[k]] += w * (val[0] * phi[0] + val[1] * phi[1] + val[2] * phi[2]);
            }
        }
    }
    Ok(out)
}

/// Values of the expansion with coefficients `coeffs` at barycentric
/// coordinates `bary` of local triangle `triangle`.
pub fn eval_expansion(space: &TraceSpace, coeffs: &[C64], triangle: usize, bary: [f64; 3]) -> ([C64; 3], C64) {
    let tri = &space.triangles[triangle];
    let x = tri.point(bary);
    let mut v = [C64::new(0.0, 0.0); 3];
    let mut div = C64::new(0.0, 0.0);
    for k in 0..3 {
        let c = coeffs[tri.dofs[k]];
        let phi = tri.basis(k, x);
        for d in 0..3 {
            v[d] += c * phi[d];
        }
        div += c * tri.divergence(k);
    }
    (v, div)
}
