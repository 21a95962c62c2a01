//! Skeleton mesh: the union of all interfaces `Γ_ij`, each triangle tagged with
//! its subdomain pair and oriented from the lower to the higher index.

mod generators;
mod graph;
mod materials;
mod mesh;
mod msh;
mod validate;

pub use generators::{
    gen_box_partition, gen_concentric_cuboids, gen_halved_cuboid, gen_octasphere, gen_sphere, subdivide,
};
pub use graph::{interface_graph, subdomain_boundary, swap_sign, InterfaceGraph, SubdomainSurface};
pub use materials::{Material, MaterialTable};
pub use mesh::{InterfaceTag, SkeletonMesh};
pub use msh::{format_msh, parse_msh, read_msh, write_msh, InterfaceLabel, TagMap};
pub use validate::{surface_is_closed, validate_mesh, MeshReport, Violation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SkeletonError {
    #[error("interface tag ({lo}, {hi}) must satisfy lo < hi")]
    InvalidTag { lo: usize, hi: usize },
    #[error("inconsistent mesh data: {0}")]
    Inconsistent(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("subdomain {index} out of range 0..={max}")]
    SubdomainOutOfRange { index: usize, max: usize },
    #[error("subdomain {0} has no boundary triangles")]
    EmptySubdomain(usize),
    #[error("open subdomain boundary: subdomain {subdomain}, edge {edge:?} has {count} incident triangles")]
    OpenBoundary { subdomain: usize, edge: (usize, usize), count: usize },
    #[error("non-conforming mesh: vertex {vertex} hangs on edge {edge:?}")]
    NonConforming { vertex: usize, edge: (usize, usize) },
    #[error("invalid mesh: {0}")]
    Invalid(String),
    #[error("unsupported mesh format version '{0}' (expected ASCII 2.2)")]
    UnsupportedFormat(String),
    #[error("physical tag {tag} of element {element} has no interface mapping")]
    UnmappedPhysicalTag { tag: i64, element: i64 },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}
