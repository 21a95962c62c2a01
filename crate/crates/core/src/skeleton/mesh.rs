use std::fmt;

use serde::{Deserialize, Serialize};

use super::SkeletonError;
use crate::geom::{self, Point};

/// Interface between subdomains `lo < hi`. Stored normals point from `lo` into `hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InterfaceTag {
    pub lo: usize,
    pub hi: usize,
}

impl InterfaceTag {
    pub fn new(lo: usize, hi: usize) -> Result<Self, SkeletonError> {
        if lo >= hi {
            return Err(SkeletonError::InvalidTag { lo, hi });
        }
        Ok(InterfaceTag { lo, hi })
    }

    pub fn contains(&self, i: usize) -> bool {
        self.lo == i || self.hi == i
    }

    /// Neighbour of `i` across this interface.
    pub fn other(&self, i: usize) -> Option<usize> {
        if self.lo == i {
            Some(self.hi)
        } else if self.hi == i {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for InterfaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo < 10 && self.hi < 10 {
            write!(f, "{}{}", self.lo, self.hi)
        } else {
            write!(f, "{}-{}", self.lo, self.hi)
        }
    }
}

/// Union of all interfaces, one tag per triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonMesh {
    pub vertices: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
    pub tags: Vec<InterfaceTag>,
}

impl SkeletonMesh {
    /// Checks index bounds and array lengths; topology is checked by
    /// [`super::validate_mesh`].
    pub fn new(
        vertices: Vec<Point>,
        triangles: Vec<[usize; 3]>,
        tags: Vec<InterfaceTag>,
    ) -> Result<Self, SkeletonError> {
        if triangles.len() != tags.len() {
            return Err(SkeletonError::Inconsistent(format!(
                "{} triangles but {} tags",
                triangles.len(),
                tags.len()
            )));
        }
        for (t, tri) in triangles.iter().enumerate() {
            if tri.iter().any(|&v| v >= vertices.len()) {
                return Err(SkeletonError::Inconsistent(format!(
                    "triangle {t} references a missing vertex"
                )));
            }
        }
        for tag in &tags {
            InterfaceTag::new(tag.lo, tag.hi)?;
        }
        Ok(SkeletonMesh { vertices, triangles, tags })
    }

    /// Largest subdomain index `M` (subdomains are `0..=M`).
    pub fn max_subdomain(&self) -> usize {
        self.tags.iter().map(|t| t.hi).max().unwrap_or(0)
    }

    pub fn num_subdomains(&self) -> usize {
        self.max_subdomain() + 1
    }

    /// Distinct interface tags in ascending order.
    pub fn interface_tags(&self) -> Vec<InterfaceTag> {
        let mut tags = self.tags.clone();
        tags.sort();
        tags.dedup();
        tags
    }

    pub fn corners(&self, t: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Stored unit normal (right-hand rule on the winding).
    pub fn normal(&self, t: usize) -> Point {
        let [a, b, c] = self.corners(t);
        geom::triangle_normal_area(a, b, c).0
    }

    pub fn area(&self, t: usize) -> f64 {
        let [a, b, c] = self.corners(t);
        geom::triangle_normal_area(a, b, c).1
    }

    pub fn total_area(&self) -> f64 {
        (0..self.triangles.len()).map(|t| self.area(t)).sum()
    }

    /// Area of the triangles carrying `tag`.
    pub fn interface_area(&self, tag: InterfaceTag) -> f64 {
        (0..self.triangles.len()).filter(|&t| self.tags[t] == tag).map(|t| self.area(t)).sum()
    }

    /// Unique undirected edges `(min, max)` in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| {
                (0..3).map(move |k| {
                    let (a, b) = (t[k], t[(k + 1) % 3]);
                    (a.min(b), a.max(b))
                })
            })
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edges()
            .iter()
            .map(|&(a, b)| geom::dist(self.vertices[a], self.vertices[b]))
            .fold(0.0, f64::max)
    }

    pub fn mean_edge_length(&self) -> f64 {
        let e = self.edges();
        e.iter().map(|&(a, b)| geom::dist(self.vertices[a], self.vertices[b])).sum::<f64>()
            / e.len().max(1) as f64
    }

    /// Reverses the winding of triangle `t`.
    pub fn flip(&mut self, t: usize) {
        self.triangles[t].swap(1, 2);
    }
}
