//! Single runs: mesh, assemble, solve and post-process one configuration.

use std::path::Path;
use std::time::Instant;

use mtf::bio::AssemblyOptions;
use mtf::geom::{CVec, Point};
use mtf::krylov::{gmres, lu_solve, GmresOptions, SolveReport};
use mtf::post::{far_field, jump_errors, near_field_grid, rel_l2, theta_grid, InterfaceJump, MieSolution, TraceData};
use mtf::precond::{BlockPreconditioner, PrecondKind};
use mtf::skeleton::{validate_mesh, MaterialTable, SkeletonMesh};
use mtf::spaces::TraceSpace;
use mtf::system::{build_mtf_from_spaces, build_rhs, build_spaces, build_stf, MtfSystem, StfSystem};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::config::{Formulation, RunConfig, SolverKind};
use crate::error::{CliError, Stage, StageExt};
use crate::output;

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub name: String,
    pub geometry: String,
    pub formulation: Formulation,
    pub solver: SolverKind,
    pub preconditioner: PrecondKind,
    pub r: f64,
    pub h: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub n_gmres: Option<usize>,
    pub converged: bool,
    pub final_residual: Option<f64>,
    pub t_assembly: f64,
    pub t_precond: f64,
    pub t_solve: f64,
    pub rcs_error: Option<f64>,
    pub jump_errors: Vec<InterfaceJump>,
}

/// `RCS_z` samples of a run and, when available, of the Mie reference.
#[derive(Debug, Clone)]
pub struct RcsTable {
    pub theta: Vec<f64>,
    pub reference: Option<Vec<f64>>,
    pub computed: Vec<f64>,
}

pub struct CaseOutcome {
    pub summary: RunSummary,
    pub rcs: RcsTable,
    pub history: Vec<f64>,
    pub system: Assembled,
    /// Full solution vector (MTF: all blocks; STF: the exterior pair).
    pub solution: Vec<C64>,
    pub near_field: Option<Vec<(Point, Option<CVec>)>>,
}

impl CaseOutcome {
    /// Exterior Cauchy data `[electric; magnetic]` on `Γ_0`.
    pub fn exterior_traces(&self) -> &[C64] {
        match &self.system {
            Assembled::Mtf(sys) => &self.solution[sys.block_range(0)],
            Assembled::Stf(_) => &self.solution,
        }
    }

    pub fn exterior_space(&self) -> &TraceSpace {
        self.system.exterior_space()
    }
}

pub enum Assembled {
    Mtf(MtfSystem),
    Stf(StfSystem),
}

impl Assembled {
    pub fn dim(&self) -> usize {
        match self {
            Assembled::Mtf(s) => s.dim(),
            Assembled::Stf(s) => s.dim(),
        }
    }

    pub fn apply(&self, x: &[C64], y: &mut [C64]) {
        match self {
            Assembled::Mtf(s) => s.apply(x, y),
            Assembled::Stf(s) => s.apply(x, y),
        }
    }

    pub fn exterior_space(&self) -> &TraceSpace {
        match self {
            Assembled::Mtf(s) => &s.spaces[0],
            Assembled::Stf(s) => &s.space,
        }
    }
}

/// Mesh, materials and spaces of a configuration, with the size check done.
pub struct Prepared {
    pub materials: MaterialTable,
    pub h: f64,
    pub mesh: SkeletonMesh,
    pub spaces: Vec<TraceSpace>,
    pub unknowns: usize,
}

pub fn prepare(cfg: &RunConfig, allow_large: bool) -> Result<Prepared, CliError> {
    cfg.validate()?;
    let materials = cfg.material_table()?;
    let h = materials.mesh_size(cfg.r);
    let mesh = cfg.geometry.build(h)?;
    let report = validate_mesh(&mesh);
    if !report.is_valid() {
        return Err(CliError::new(Stage::Mesh, format!("{:?}", report.violations)));
    }
    if mesh.num_subdomains() != materials.len() {
        return Err(CliError::new(
            Stage::Config,
            format!("mesh has {} subdomains but {} materials are given", mesh.num_subdomains(), materials.len()),
        ));
    }
    let spaces = build_spaces(&mesh).stage(Stage::Mesh)?;
    let unknowns = match cfg.formulation {
        Formulation::Mtf => spaces.iter().map(|s| 2 * s.dim()).sum(),
        Formulation::Stf => 2 * spaces[0].dim(),
    };
    if unknowns > cfg.max_unknowns && !allow_large {
        return Err(CliError::new(
            Stage::Config,
            format!("system size {unknowns} exceeds the cap {}; pass --allow-large to run it anyway", cfg.max_unknowns),
        ));
    }
    Ok(Prepared { materials, h, mesh, spaces, unknowns })
}

pub fn assemble(cfg: &RunConfig, prepared: Prepared) -> Result<(Assembled, MaterialTable, f64), CliError> {
    let options = AssemblyOptions { precision: cfg.precision, ..Default::default() };
    let start = Instant::now();
    let system = match cfg.formulation {
        Formulation::Mtf => {
            Assembled::Mtf(build_mtf_from_spaces(&prepared.mesh, prepared.spaces, &prepared.materials, &options).stage(Stage::Assembly)?)
        }
        Formulation::Stf => Assembled::Stf(build_stf(&prepared.mesh, &prepared.materials, &options).stage(Stage::Assembly)?),
    };
    Ok((system, prepared.materials, start.elapsed().as_secs_f64()))
}

pub fn rhs(cfg: &RunConfig, system: &Assembled, materials: &MaterialTable) -> Result<Vec<C64>, CliError> {
    let inc = cfg.incident.field(materials.k0);
    match system {
        Assembled::Mtf(s) => build_rhs(&inc, s, materials).stage(Stage::Assembly),
        Assembled::Stf(s) => s.rhs(&inc, materials).stage(Stage::Assembly),
    }
}

/// Runs GMRES with the given preconditioner kind; returns the report and the
/// preconditioner setup time.
pub fn solve_gmres(
    cfg: &RunConfig,
    system: &Assembled,
    materials: &MaterialTable,
    rhs: &[C64],
    kind: PrecondKind,
) -> Result<(SolveReport, f64), CliError> {
    let options = GmresOptions { tol: cfg.tol, maxit: cfg.maxit };
    let apply = |x: &[C64], y: &mut [C64]| system.apply(x, y);
    match (system, kind) {
        (Assembled::Mtf(sys), kind) if kind != PrecondKind::None => {
            let start = Instant::now();
            let p = BlockPreconditioner::build(kind, sys, materials, cfg.osrc.into()).stage(Stage::Precond)?;
            let t_precond = start.elapsed().as_secs_f64();
            let pa = |x: &[C64], y: &mut [C64]| p.apply(x, y);
            Ok((gmres(&apply, rhs, options, Some(&pa)).stage(Stage::Solve)?, t_precond))
        }
        (Assembled::Stf(_), kind) if kind != PrecondKind::None => {
            Err(CliError::new(Stage::Precond, format!("preconditioner {kind} is defined for the multiple-traces system only")))
        }
        _ => Ok((gmres(&apply, rhs, options, None).stage(Stage::Solve)?, 0.0)),
    }
}

/// Effective preconditioner of a configuration: single-trace runs are
/// always unpreconditioned.
pub fn effective_kind(cfg: &RunConfig) -> PrecondKind {
    match cfg.formulation {
        Formulation::Stf => PrecondKind::None,
        Formulation::Mtf => cfg.preconditioner,
    }
}

/// Far-field `RCS_z` of the exterior traces.
pub fn rcs_of(space: &TraceSpace, exterior: &[C64], k0: f64, theta: &[f64]) -> Result<Vec<f64>, CliError> {
    let n = space.dim();
    let tr = TraceData { space, electric: &exterior[..n], magnetic: &exterior[n..], k: k0, rho: 1.0 };
    Ok(far_field(&tr, theta).stage(Stage::Post)?.rcs_z())
}

/// Full pipeline without writing anything.
pub fn solve_case(cfg: &RunConfig, allow_large: bool) -> Result<CaseOutcome, CliError> {
    let prepared = prepare(cfg, allow_large)?;
    let h = prepared.h;
    let (system, materials, t_assembly) = assemble(cfg, prepared)?;
    let b = rhs(cfg, &system, &materials)?;
    let kind = effective_kind(cfg);
    if kind != cfg.preconditioner {
        log::warn!("single-trace runs ignore preconditioner {}", cfg.preconditioner);
    }
    let (solution, history, n_gmres, converged, final_residual, t_precond, t_solve) = match cfg.solver {
        SolverKind::Lu => {
            let start = Instant::now();
            let dense = match &system {
                Assembled::Mtf(s) => s.to_dense(),
                Assembled::Stf(s) => s.to_dense(),
            };
            let x = lu_solve(&dense, &b).stage(Stage::Solve)?;
            (x, Vec::new(), None, true, None, 0.0, start.elapsed().as_secs_f64())
        }
        SolverKind::Gmres => {
            let (rep, t_precond) = solve_gmres(cfg, &system, &materials, &b, kind)?;
            let last = rep.history.last().copied();
            (rep.solution, rep.history, Some(rep.iterations), rep.converged, last, t_precond, rep.seconds)
        }
    };
    if !converged {
        log::warn!("GMRES stopped after {} iterations without reaching {}", n_gmres.unwrap_or(0), cfg.tol);
    }

    let theta = theta_grid(cfg.samples);
    let exterior: &[C64] = match &system {
        Assembled::Mtf(s) => &solution[s.block_range(0)],
        Assembled::Stf(_) => &solution,
    };
    let computed = rcs_of(system.exterior_space(), exterior, materials.k0, &theta)?;
    let reference = match cfg.geometry.sphere_radius() {
        Some(radius) if cfg.mie_applies() => {
            let m = &cfg.materials[1];
            Some(MieSolution::new(radius, materials.k0, m.eps_r, m.mu_r).stage(Stage::Post)?.rcs_z(&theta))
        }
        _ => None,
    };
    let rcs_error = match &reference {
        Some(r) => Some(rel_l2(&theta, &computed, r).stage(Stage::Post)?),
        None => None,
    };
    let jumps = match &system {
        Assembled::Mtf(s) => jump_errors(s, &solution).stage(Stage::Post)?,
        Assembled::Stf(_) => Vec::new(),
    };
    let near_field = match cfg.near_field {
        Some(spec) => Some(near_field(cfg, &system, &solution, &materials, spec)?),
        None => None,
    };
    let summary = RunSummary {
        name: cfg.name.clone(),
        geometry: cfg.geometry.name().to_string(),
        formulation: cfg.formulation,
        solver: cfg.solver,
        preconditioner: kind,
        r: cfg.r,
        h,
        n: system.dim(),
        n_gmres,
        converged,
        final_residual,
        t_assembly,
        t_precond,
        t_solve,
        rcs_error,
        jump_errors: jumps,
    };
    Ok(CaseOutcome {
        summary,
        rcs: RcsTable { theta, reference, computed },
        history,
        system,
        solution,
        near_field,
    })
}

fn near_field(
    cfg: &RunConfig,
    system: &Assembled,
    solution: &[C64],
    materials: &MaterialTable,
    spec: crate::config::NearFieldSpec,
) -> Result<Vec<(Point, Option<CVec>)>, CliError> {
    if spec.points < 2 || !(spec.extent > 0.0) {
        return Err(CliError::new(Stage::Config, "near-field grid needs at least 2 points and a positive extent"));
    }
    let inc = cfg.incident.field(materials.k0);
    let traces: Vec<TraceData> = match system {
        Assembled::Mtf(s) => s
            .spaces
            .iter()
            .enumerate()
            .map(|(i, space)| {
                let u = &solution[s.block_range(i)];
                let n = space.dim();
                TraceData { space, electric: &u[..n], magnetic: &u[n..], k: materials.k(i), rho: materials.rho(i) }
            })
            .collect(),
        Assembled::Stf(_) => return Err(CliError::new(Stage::Post, "near-field grids need the multiple-traces formulation")),
    };
    let step = 2.0 * spec.extent / (spec.points - 1) as f64;
    let points: Vec<Point> = (0..spec.points)
        .flat_map(|j| (0..spec.points).map(move |i| [-spec.extent + i as f64 * step, -spec.extent + j as f64 * step, spec.plane_z]))
        .collect();
    let values = near_field_grid(&traces, &|x| inc.electric(x), &points);
    Ok(points.into_iter().zip(values).collect())
}

/// Runs one case and writes its summary and CSV files into `dir`. The
/// summary is written even when GMRES does not converge.
pub fn run_case(cfg: &RunConfig, allow_large: bool, dir: &Path) -> Result<RunSummary, CliError> {
    let outcome = solve_case(cfg, allow_large)?;
    output::ensure_dir(dir)?;
    output::write_json(&dir.join("summary.json"), &outcome.summary)?;
    output::write_rcs(&dir.join("rcs.csv"), &outcome.rcs)?;
    if !outcome.history.is_empty() {
        output::write_history(&dir.join("history.csv"), &outcome.history)?;
    }
    output::write_jumps(&dir.join("jumps.csv"), &outcome.summary.jump_errors)?;
    if let Some(grid) = &outcome.near_field {
        output::write_near_field(&dir.join("near_field.csv"), grid)?;
    }
    Ok(outcome.summary)
}
