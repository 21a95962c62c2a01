//! Block-diagonal preconditioners for the MTF system.

mod osrc;
mod pade;

pub use osrc::{OsrcBlock, OsrcParams, OsrcPower};
pub use pade::{pade_coefficients, PadeCoefficients};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::krylov::{DenseLu, KrylovError};
use crate::skeleton::MaterialTable;
use crate::sparse::SparseError;
use crate::system::MtfSystem;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PrecondError {
    #[error("Padé order must be at least 1, got {0}")]
    PadeOrder(usize),
    #[error(transparent)]
    Sparse(#[from] SparseError),
    #[error(transparent)]
    Krylov(#[from] KrylovError),
    #[error("unknown preconditioner kind `{0}`")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrecondKind {
    None,
    BlockOsrc,
    BlockCalderon,
}

impl std::str::FromStr for PrecondKind {
    type Err = PrecondError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(PrecondKind::None),
            "block-osrc" => Ok(PrecondKind::BlockOsrc),
            "block-calderon" => Ok(PrecondKind::BlockCalderon),
            other => Err(PrecondError::UnknownKind(other.to_string())),
        }
    }
}

impl std::fmt::Display for PrecondKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PrecondKind::None => "none",
            PrecondKind::BlockOsrc => "block-osrc",
            PrecondKind::BlockCalderon => "block-calderon",
        })
    }
}

enum BlockApply {
    Osrc { block: OsrcBlock, rho: f64 },
    Calderon { lu: DenseLu },
}

/// Block-diagonal preconditioner acting on weak (tested) residual vectors.
pub struct BlockPreconditioner {
    pub kind: PrecondKind,
    offsets: Vec<usize>,
    blocks: Vec<BlockApply>,
}

impl BlockPreconditioner {
    pub fn build(kind: PrecondKind, system: &MtfSystem, materials: &MaterialTable, params: OsrcParams) -> Result<Self, PrecondError> {
        Self::build_with_power(kind, system, materials, params, OsrcPower::InverseSqrt)
    }

    pub fn build_with_power(
        kind: PrecondKind,
        system: &MtfSystem,
        materials: &MaterialTable,
        params: OsrcParams,
        power: OsrcPower,
    ) -> Result<Self, PrecondError> {
        let mut blocks = Vec::new();
        match kind {
            PrecondKind::None => {}
            PrecondKind::BlockOsrc => {
                for space in &system.spaces {
                    let i = space.subdomain();
                    blocks.push(BlockApply::Osrc { block: OsrcBlock::new(space, materials.k(i), params, power)?, rho: materials.rho(i) });
                }
            }
            PrecondKind::BlockCalderon => {
                for blk in &system.diagonal {
                    blocks.push(BlockApply::Calderon { lu: DenseLu::new(&blk.to_dense(C64::new(2.0, 0.0)))? });
                }
            }
        }
        Ok(BlockPreconditioner { kind, offsets: system.offsets.clone(), blocks })
    }

    /// `y = P x`.
    pub fn apply(&self, x: &[C64], y: &mut [C64]) {
        if self.kind == PrecondKind::None {
            y.copy_from_slice(x);
            return;
        }
        for (i, blk) in self.blocks.iter().enumerate() {
            let r = self.offsets[i]..self.offsets[i + 1];
            let out = apply_block(blk, &x[r.clone()]);
            y[r].copy_from_slice(&out);
        }
    }
}

fn apply_block(blk: &BlockApply, x: &[C64]) -> Vec<C64> {
    match blk {
        BlockApply::Osrc { block, rho } => {
            let n = block.dim();
            let mut w = x.to_vec();
            let (wd, wn) = w.split_at_mut(n);
            block.mass_solve(wd);
            block.mass_solve(wn);
            let td = block.apply(wd);
            let tn = block.apply(wn);
            tn.iter().map(|v| v / *rho).chain(td.iter().map(|v| -v * *rho)).collect()
        }
        BlockApply::Calderon { lu } => {
            let mut y = x.to_vec();
            lu.solve_in_place(&mut y);
            y
        }
    }
}
