use std::collections::{BTreeSet, HashMap};

use super::{InterfaceTag, SkeletonError, SkeletonMesh};
use crate::geom::{self, Point};

/// Neighbour sets `Λ_i` of every subdomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterfaceGraph {
    pub neighbors: Vec<BTreeSet<usize>>,
}

impl InterfaceGraph {
    pub fn neighbors_of(&self, i: usize) -> Vec<usize> {
        self.neighbors[i].iter().copied().collect()
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbors.get(i).is_some_and(|s| s.contains(&j))
    }
}

pub fn interface_graph(mesh: &SkeletonMesh) -> InterfaceGraph {
    let mut neighbors = vec![BTreeSet::new(); mesh.num_subdomains()];
    for tag in mesh.interface_tags() {
        neighbors[tag.lo].insert(tag.hi);
        neighbors[tag.hi].insert(tag.lo);
    }
    InterfaceGraph { neighbors }
}

/// Closed boundary of one subdomain assembled from its interfaces.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdomainSurface {
    pub index: usize,
    /// Interfaces of the subdomain with their swap multiplier, ascending by tag.
    pub interfaces: Vec<(InterfaceTag, i8)>,
    /// Skeleton triangle ids, ascending.
    pub triangles: Vec<usize>,
    /// Swap multiplier per entry of `triangles`.
    pub swaps: Vec<i8>,
}

impl SubdomainSurface {
    /// Outward unit normal of local triangle `local`.
    pub fn effective_normal(&self, mesh: &SkeletonMesh, local: usize) -> Point {
        geom::scale(f64::from(self.swaps[local]), mesh.normal(self.triangles[local]))
    }

    /// Corners ordered so the right-hand rule gives the outward normal.
    pub fn oriented_corners(&self, mesh: &SkeletonMesh, local: usize) -> [usize; 3] {
        let [a, b, c] = mesh.triangles[self.triangles[local]];
        if self.swaps[local] > 0 {
            [a, b, c]
        } else {
            [a, c, b]
        }
    }

    /// Interface list in signed notation, e.g. `[-01, 12]`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .interfaces
            .iter()
            .map(|(tag, s)| if *s < 0 { format!("-{tag}") } else { tag.to_string() })
            .collect();
        format!("[{}]", parts.join(", "))
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Same triangles with every swap negated (inward normals).
    pub fn negated(&self) -> SubdomainSurface {
        SubdomainSurface {
            index: self.index,
            interfaces: self.interfaces.iter().map(|(t, s)| (*t, -s)).collect(),
            triangles: self.triangles.clone(),
            swaps: self.swaps.iter().map(|s| -s).collect(),
        }
    }
}

/// Swap multiplier of `tag` seen from subdomain `i`: `+1` iff `i` is the lower index.
pub fn swap_sign(tag: InterfaceTag, i: usize) -> i8 {
    if tag.lo == i {
        1
    } else {
        -1
    }
}

/// Collects the triangles of every interface touching `i` and orients them
/// outward from `Ω_i`.
pub fn subdomain_boundary(mesh: &SkeletonMesh, i: usize) -> Result<SubdomainSurface, SkeletonError> {
    if i > mesh.max_subdomain() {
        return Err(SkeletonError::SubdomainOutOfRange { index: i, max: mesh.max_subdomain() });
    }
    let mut interfaces: Vec<(InterfaceTag, i8)> = mesh
        .interface_tags()
        .into_iter()
        .filter(|t| t.contains(i))
        .map(|t| (t, swap_sign(t, i)))
        .collect();
    interfaces.sort();
    let mut triangles = Vec::new();
    let mut swaps = Vec::new();
    for (t, tag) in mesh.tags.iter().enumerate() {
        if tag.contains(i) {
            triangles.push(t);
            swaps.push(swap_sign(*tag, i));
        }
    }
    if triangles.is_empty() {
        return Err(SkeletonError::EmptySubdomain(i));
    }
    let surface = SubdomainSurface { index: i, interfaces, triangles, swaps };
    if let Some((edge, count)) = edge_incidence(mesh, &surface).into_iter().find(|(_, c)| *c != 2) {
        return Err(SkeletonError::OpenBoundary { subdomain: i, edge, count });
    }
    Ok(surface)
}

/// Number of surface triangles incident to every edge, ascending by edge.
pub(crate) fn edge_incidence(mesh: &SkeletonMesh, surface: &SubdomainSurface) -> Vec<((usize, usize), usize)> {
    let mut count: HashMap<(usize, usize), usize> = HashMap::new();
    for &t in &surface.triangles {
        let tri = mesh.triangles[t];
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            *count.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let mut out: Vec<_> = count.into_iter().collect();
    out.sort_unstable();
    out
}
