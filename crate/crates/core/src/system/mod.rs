//! The multiple-traces block system `2A + X`, its right-hand side and the
//! single-trace variant for one inclusion.

mod incident;
mod pairing;
mod stf;

pub use incident::IncidentField;
pub use pairing::PairingInverse;
pub use stf::{build_stf, StfSystem};

use faer::Mat;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use thiserror::Error;

use crate::bio::{assemble_multitrace, assemble_transmission, AssemblyOptions, BioError, MultitraceBlock};
use crate::quadrature::QuadratureError;
use crate::skeleton::{interface_graph, subdomain_boundary, InterfaceGraph, MaterialTable, SkeletonError, SkeletonMesh};
use crate::spaces::{build_trace_space, field_moments, SpaceError, Testing, TraceSpace};
use crate::sparse::{CsrMatrix, SparseError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SystemError {
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Bio(#[from] BioError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Sparse(#[from] SparseError),
    #[error("materials cover {materials} subdomains but the mesh has {mesh}")]
    MaterialCount { materials: usize, mesh: usize },
    #[error("single-trace formulation needs exactly one inclusion, found {0}")]
    NotSingleInclusion(usize),
    #[error("pairing matrix of subdomain {subdomain} is singular (relative solve residual {residual:.3e})")]
    SingularPairing { subdomain: usize, residual: f64 },
    #[error("vector length {got} does not match system size {expected}")]
    Dimension { expected: usize, got: usize },
}

/// Transmission coupling into block row `row` from block column `col`:
/// twisted identity with trial space `col` and test space `row`.
#[derive(Debug, Clone)]
pub struct TransmissionBlock {
    pub row: usize,
    pub col: usize,
    pub matrix: CsrMatrix,
}

/// Weak MTF operator. Block `i` of a vector holds the electric then the
/// scaled magnetic coefficients of subdomain `i`.
#[derive(Debug, Clone)]
pub struct MtfSystem {
    pub spaces: Vec<TraceSpace>,
    pub diagonal: Vec<MultitraceBlock>,
    pub transmission: Vec<TransmissionBlock>,
    pub graph: InterfaceGraph,
    pub offsets: Vec<usize>,
}

impl MtfSystem {
    pub fn num_blocks(&self) -> usize {
        self.spaces.len()
    }

    /// Total number of unknowns `2 Σ N_i`.
    pub fn dim(&self) -> usize {
        *self.offsets.last().expect("offsets")
    }

    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Whether block `(i, j)` of the operator is structurally nonzero.
    pub fn block_nonzero(&self, i: usize, j: usize) -> bool {
        i == j || self.transmission.iter().any(|b| b.row == i && b.col == j && b.matrix.nnz() > 0)
    }

    /// Block row `i` of `M x`.
    fn apply_row(&self, i: usize, x: &[C64]) -> Vec<C64> {
        let r = self.block_range(i);
        let n = self.spaces[i].dim();
        let mut y = vec![C64::new(0.0, 0.0); r.len()];
        self.diagonal[i].apply_add(C64::new(2.0, 0.0), &x[r.clone()], &mut y);
        for b in self.transmission.iter().filter(|b| b.row == i) {
            let c = self.block_range(b.col);
            let m = self.spaces[b.col].dim();
            let xc = &x[c];
            let (ye, ym) = y.split_at_mut(n);
            b.matrix.matvec_add(C64::new(1.0, 0.0), &xc[..m], ye);
            b.matrix.matvec_add(C64::new(1.0, 0.0), &xc[m..], ym);
        }
        y
    }

    /// `y = M x`.
    pub fn apply(&self, x: &[C64], y: &mut [C64]) {
        let rows: Vec<Vec<C64>> = (0..self.num_blocks()).into_par_iter().map(|i| self.apply_row(i, x)).collect();
        for (i, row) in rows.into_iter().enumerate() {
            y[self.block_range(i)].copy_from_slice(&row);
        }
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![C64::new(0.0, 0.0); self.dim()];
        self.apply(x, &mut y);
        y
    }

    /// Explicit dense operator.
    pub fn to_dense(&self) -> Mat<C64> {
        let n = self.dim();
        let mut m = Mat::<C64>::zeros(n, n);
        for (i, blk) in self.diagonal.iter().enumerate() {
            let d = blk.to_dense(C64::new(2.0, 0.0));
            let o = self.offsets[i];
            for c in 0..d.ncols() {
                for r in 0..d.nrows() {
                    m[(o + r, o + c)] = d[(r, c)];
                }
            }
        }
        for b in &self.transmission {
            let (ro, co) = (self.offsets[b.row], self.offsets[b.col]);
            let (nr, nc) = (self.spaces[b.row].dim(), self.spaces[b.col].dim());
            for (r, c, v) in b.matrix.triplets() {
                m[(ro + r, co + c)] += C64::new(v, 0.0);
                m[(ro + nr + r, co + nc + c)] += C64::new(v, 0.0);
            }
        }
        m
    }
}

/// Builds all subdomain spaces of a mesh.
pub fn build_spaces(mesh: &SkeletonMesh) -> Result<Vec<TraceSpace>, SystemError> {
    (0..mesh.num_subdomains())
        .map(|i| {
            let s = subdomain_boundary(mesh, i)?;
            Ok(build_trace_space(mesh, &s)?)
        })
        .collect()
}

/// Assembles the MTF block operator.
pub fn build_mtf(mesh: &SkeletonMesh, materials: &MaterialTable, options: &AssemblyOptions) -> Result<MtfSystem, SystemError> {
    let spaces = build_spaces(mesh)?;
    build_mtf_from_spaces(mesh, spaces, materials, options)
}

pub fn build_mtf_from_spaces(
    mesh: &SkeletonMesh,
    spaces: Vec<TraceSpace>,
    materials: &MaterialTable,
    options: &AssemblyOptions,
) -> Result<MtfSystem, SystemError> {
    if materials.len() != spaces.len() {
        return Err(SystemError::MaterialCount { materials: materials.len(), mesh: spaces.len() });
    }
    let graph = interface_graph(mesh);
    let mut diagonal = Vec::with_capacity(spaces.len());
    for space in &spaces {
        diagonal.push(assemble_multitrace(space, materials, options)?);
    }
    let mut transmission = Vec::new();
    for i in 0..spaces.len() {
        for j in graph.neighbors_of(i) {
            transmission.push(TransmissionBlock { row: i, col: j, matrix: assemble_transmission(&spaces[j], &spaces[i])? });
        }
    }
    let mut offsets = vec![0];
    for s in &spaces {
        offsets.push(offsets.last().unwrap() + 2 * s.dim());
    }
    Ok(MtfSystem { spaces, diagonal, transmission, graph, offsets })
}

/// Quadrature order of right-hand-side moments.
pub const RHS_ORDER: usize = 6;

/// Twisted moments of the incident Cauchy data `(γ_D E, ρ_0 γ_N E)` on the
/// exterior boundary, unscaled.
pub fn incident_moments(incident: &IncidentField, space: &TraceSpace, rho: f64) -> Result<Vec<C64>, SystemError> {
    let d = field_moments(space, RHS_ORDER, Testing::Twisted, &|x, n| incident.dirichlet_trace(x, n))?;
    let m = field_moments(space, RHS_ORDER, Testing::Twisted, &|x, n| {
        let v = incident.neumann_trace(x, n);
        [v[0] * rho, v[1] * rho, v[2] * rho]
    })?;
    Ok(d.into_iter().chain(m).collect())
}

/// MTF right-hand side `2 u^inc`: twisted moments of the incident Cauchy
/// data in block 0, zero elsewhere.
pub fn build_rhs(incident: &IncidentField, system: &MtfSystem, materials: &MaterialTable) -> Result<Vec<C64>, SystemError> {
    let mut rhs = vec![C64::new(0.0, 0.0); system.dim()];
    let b = incident_moments(incident, &system.spaces[0], materials.rho(0))?;
    for (dst, v) in rhs[system.block_range(0)].iter_mut().zip(b) {
        *dst = 2.0 * v;
    }
    Ok(rhs)
}
