use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::graph::{swap_sign, SubdomainSurface};
use super::SkeletonMesh;
use crate::geom;

/// One broken invariant found by [`validate_mesh`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    DegenerateTriangle { triangle: usize },
    MissingSubdomain { subdomain: usize },
    /// Edge with a single incident triangle in a subdomain boundary.
    OpenBoundary { subdomain: usize, edge: (usize, usize) },
    /// Edge with more than two incident triangles in a subdomain boundary.
    NonManifoldEdge { subdomain: usize, edge: (usize, usize), count: usize },
    /// A vertex lies strictly inside an edge (hanging node).
    NonConforming { vertex: usize, edge: (usize, usize) },
    /// Two neighbouring triangles traverse their shared edge in the same direction.
    OrientationInconsistency { subdomain: usize, triangles: (usize, usize) },
    /// Effective normals of a closed boundary point inward.
    InwardBoundary { subdomain: usize, signed_volume: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DegenerateTriangle { triangle } => write!(f, "degenerate triangle {triangle}"),
            Violation::MissingSubdomain { subdomain } => write!(f, "subdomain {subdomain} has no interfaces"),
            Violation::OpenBoundary { subdomain, edge } => {
                write!(f, "open subdomain boundary: subdomain {subdomain}, edge {edge:?}")
            }
            Violation::NonManifoldEdge { subdomain, edge, count } => {
                write!(f, "non-manifold edge {edge:?} in subdomain {subdomain} ({count} triangles)")
            }
            Violation::NonConforming { vertex, edge } => {
                write!(f, "non-conforming mesh: vertex {vertex} hangs on edge {edge:?}")
            }
            Violation::OrientationInconsistency { subdomain, triangles } => write!(
                f,
                "orientation inconsistency in subdomain {subdomain} between triangles {} and {}",
                triangles.0, triangles.1
            ),
            Violation::InwardBoundary { subdomain, signed_volume } => write!(
                f,
                "orientation inconsistency: boundary of subdomain {subdomain} encloses signed volume {signed_volume:.3e}"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct MeshReport {
    pub violations: Vec<Violation>,
}

impl MeshReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every skeleton invariant and lists all violations found.
pub fn validate_mesh(mesh: &SkeletonMesh) -> MeshReport {
    let mut violations = Vec::new();
    let diam = mesh.max_edge_length().max(f64::MIN_POSITIVE);
    for t in 0..mesh.triangles.len() {
        let [a, b, c] = mesh.triangles[t];
        if a == b || b == c || a == c || mesh.area(t) <= 1e-14 * diam * diam {
            violations.push(Violation::DegenerateTriangle { triangle: t });
        }
    }
    let mut hanging_checked = std::collections::HashSet::new();
    for s in 0..mesh.num_subdomains() {
        let tris: Vec<usize> = (0..mesh.triangles.len()).filter(|&t| mesh.tags[t].contains(s)).collect();
        if tris.is_empty() {
            violations.push(Violation::MissingSubdomain { subdomain: s });
            continue;
        }
        // Directed use of each edge by the outward-oriented triangles of Ω_s.
        let mut uses: HashMap<(usize, usize), Vec<(usize, bool)>> = HashMap::new();
        let mut volume = 0.0;
        for &t in &tris {
            let mut tri = mesh.triangles[t];
            if swap_sign(mesh.tags[t], s) < 0 {
                tri.swap(1, 2);
            }
            let [p, q, r] = [mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]];
            volume += geom::dot(p, geom::cross(q, r)) / 6.0;
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                uses.entry((a.min(b), a.max(b))).or_default().push((t, a < b));
            }
        }
        let mut edges: Vec<_> = uses.into_iter().collect();
        edges.sort_unstable_by_key(|(e, _)| *e);
        for (edge, list) in edges {
            match list.len() {
                1 => {
                    if hanging_checked.insert(edge) {
                        if let Some(v) = hanging_vertex(mesh, edge) {
                            violations.push(Violation::NonConforming { vertex: v, edge });
                            continue;
                        }
                    }
                    violations.push(Violation::OpenBoundary { subdomain: s, edge });
                }
                2 => {
                    if list[0].1 == list[1].1 {
                        violations.push(Violation::OrientationInconsistency {
                            subdomain: s,
                            triangles: (list[0].0, list[1].0),
                        });
                    }
                }
                n => violations.push(Violation::NonManifoldEdge { subdomain: s, edge, count: n }),
            }
        }
        // Bounded subdomains enclose positive volume; the exterior's outward
        // normals point into the scatterer, so its signed volume is negative.
        let inward = if s == 0 { volume > 0.0 } else { volume < 0.0 };
        if inward {
            violations.push(Violation::InwardBoundary { subdomain: s, signed_volume: volume });
        }
    }
    MeshReport { violations }
}

fn hanging_vertex(mesh: &SkeletonMesh, edge: (usize, usize)) -> Option<usize> {
    let a = mesh.vertices[edge.0];
    let b = mesh.vertices[edge.1];
    let ab = geom::sub(b, a);
    let len2 = geom::dot(ab, ab);
    let tol = 1e-9 * len2.sqrt();
    mesh.vertices.iter().enumerate().find_map(|(v, &p)| {
        if v == edge.0 || v == edge.1 {
            return None;
        }
        let s = geom::dot(geom::sub(p, a), ab) / len2;
        if s <= 1e-9 || s >= 1.0 - 1e-9 {
            return None;
        }
        let foot = geom::add(a, geom::scale(s, ab));
        (geom::dist(foot, p) < tol).then_some(v)
    })
}

/// Checks that a surface produced by [`super::subdomain_boundary`] is closed and
/// consistently oriented.
pub fn surface_is_closed(mesh: &SkeletonMesh, surface: &SubdomainSurface) -> bool {
    super::graph::edge_incidence(mesh, surface).iter().all(|(_, c)| *c == 2)
}
