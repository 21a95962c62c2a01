use faer::Mat;
use num_complex::Complex64 as C64;

use super::{build_spaces, incident_moments, IncidentField, SystemError};
use crate::bio::{assemble_multitrace, AssemblyOptions, MultitraceBlock};
use crate::skeleton::{MaterialTable, SkeletonMesh};
use crate::spaces::TraceSpace;

/// Single-trace system for one inclusion. The unknown is the exterior Cauchy
/// pair on Γ_0. The interior block is assembled on Γ_1, whose twisted test
/// functions carry the opposite normal, so the weak sum `Â_0 + Â_1` is the
/// single-trace operator `Â_0 - Â_1` written in the exterior orientation.
#[derive(Debug, Clone)]
pub struct StfSystem {
    pub space: TraceSpace,
    pub exterior: MultitraceBlock,
    pub interior: MultitraceBlock,
}

impl StfSystem {
    pub fn dim(&self) -> usize {
        2 * self.space.dim()
    }

    pub fn apply(&self, x: &[C64], y: &mut [C64]) {
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        self.exterior.apply_add(C64::new(1.0, 0.0), x, y);
        self.interior.apply_add(C64::new(1.0, 0.0), x, y);
    }

    pub fn to_dense(&self) -> Mat<C64> {
        let a = self.exterior.to_dense(C64::new(1.0, 0.0));
        let b = self.interior.to_dense(C64::new(1.0, 0.0));
        Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] + b[(i, j)])
    }

    /// Right-hand side `u^inc` (unscaled).
    pub fn rhs(&self, incident: &IncidentField, materials: &MaterialTable) -> Result<Vec<C64>, SystemError> {
        incident_moments(incident, &self.space, materials.rho(0))
    }
}

pub fn build_stf(mesh: &SkeletonMesh, materials: &MaterialTable, options: &AssemblyOptions) -> Result<StfSystem, SystemError> {
    let spaces = build_spaces(mesh)?;
    if spaces.len() != 2 {
        return Err(SystemError::NotSingleInclusion(spaces.len().saturating_sub(1)));
    }
    if materials.len() != 2 {
        return Err(SystemError::MaterialCount { materials: materials.len(), mesh: 2 });
    }
    let exterior = assemble_multitrace(&spaces[0], materials, options)?;
    let interior = assemble_multitrace(&spaces[1], materials, options)?;
    let mut it = spaces.into_iter();
    Ok(StfSystem { space: it.next().expect("space 0"), exterior, interior })
}
