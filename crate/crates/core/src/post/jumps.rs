//! Relative L² jumps of the solved traces across each interface.

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::PostError;
use crate::quadrature::gauss_triangle;
use crate::spaces::{eval_expansion, TraceSpace};
use crate::system::MtfSystem;

const JUMP_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterfaceJump {
    pub i: usize,
    pub j: usize,
    /// `‖γ_D^i u_i + γ_D^j u_j‖ / ‖γ_D^i u_i‖` over the shared triangles.
    pub dirichlet: f64,
    pub neumann: f64,
}

/// `(‖u_i + u_j‖², ‖u_i‖²)` over triangles shared by both spaces.
fn jump_norms(si: &TraceSpace, ui: &[C64], sj: &TraceSpace, uj: &[C64]) -> Result<(f64, f64, usize), PostError> {
    let rule = gauss_triangle(JUMP_ORDER)?;
    let (mut diff, mut base, mut count) = (0.0, 0.0, 0);
    for (ti, tri) in si.triangles.iter().enumerate() {
        let Some(tj) = sj.local_triangle(tri.skeleton) else { continue };
        count += 1;
        // Both spaces see the same geometric triangle; barycentric coordinates
        // are matched through the shared vertex ids.
        let other = &sj.triangles[tj];
        let perm: Vec<usize> = tri
            .vertex_ids
            .iter()
            .map(|v| other.vertex_ids.iter().position(|w| w == v).expect("shared triangle"))
            .collect();
        for q in 0..rule.len() {
            let bary = rule.barycentric(q);
            let mut bj = [0.0; 3];
            for (k, &p) in perm.iter().enumerate() {
                bj[p] = bary[k];
            }
            let (a, _) = eval_expansion(si, ui, ti, bary);
            let (b, _) = eval_expansion(sj, uj, tj, bj);
            let w = rule.weights[q] * 2.0 * tri.area;
            for c in 0..3 {
                diff += w * (a[c] + b[c]).norm_sqr();
                base += w * a[c].norm_sqr();
            }
        }
    }
    Ok((diff, base, count))
}

/// Dirichlet and Neumann jumps for every adjacent pair `i < j`.
pub fn jump_errors(system: &MtfSystem, solution: &[C64]) -> Result<Vec<InterfaceJump>, PostError> {
    if solution.len() != system.dim() {
        return Err(PostError::Dimension { expected: system.dim(), got: solution.len() });
    }
    let mut out = Vec::new();
    for i in 0..system.num_blocks() {
        for j in system.graph.neighbors_of(i) {
            if j <= i {
                continue;
            }
            let (si, sj) = (&system.spaces[i], &system.spaces[j]);
            let (ri, rj) = (system.block_range(i), system.block_range(j));
            let (ni, nj) = (si.dim(), sj.dim());
            let ui = &solution[ri];
            let uj = &solution[rj];
            let (dd, db, count) = jump_norms(si, &ui[..ni], sj, &uj[..nj])?;
            if count == 0 {
                return Err(PostError::EmptyInterface(i, j));
            }
            let (nd, nb, _) = jump_norms(si, &ui[ni..], sj, &uj[nj..])?;
            if db == 0.0 || nb == 0.0 {
                return Err(PostError::ZeroDenominator);
            }
            out.push(InterfaceJump { i, j, dirichlet: (dd / db).sqrt(), neumann: (nd / nb).sqrt() });
        }
    }
    Ok(out)
}
