//! Multi-run studies: h-convergence, preconditioner comparison, scaling in
//! the number of inclusions, spectra and mesh export.

use std::path::Path;

use mtf::krylov::{materialize, spectrum};
use mtf::post::{fit_loglog_slope, rel_l2};
use mtf::precond::{BlockPreconditioner, PrecondKind};
use mtf::skeleton::{validate_mesh, write_msh};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::config::{Formulation, GeometrySpec, RunConfig, SolverKind};
use crate::error::{CliError, Stage, StageExt};
use crate::output::{self, num, opt};
use crate::runner::{assemble, prepare, rhs, solve_case, solve_gmres, Assembled};

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub r: f64,
    pub h: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub rcs_error: f64,
    /// Largest relative jump over all interfaces (absent for single-trace runs).
    pub jump_dirichlet: Option<f64>,
    pub jump_neumann: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub rcs_slope: Option<f64>,
    pub jump_dirichlet_slope: Option<f64>,
    pub jump_neumann_slope: Option<f64>,
}

fn slope(h: &[f64], e: &[f64]) -> Option<f64> {
    if h.len() < 2 {
        return None;
    }
    fit_loglog_slope(h, e).ok()
}

/// Runs the case at each precision and fits log-log slopes of the errors
/// against `h`. A single precision gives no slope.
pub fn run_convergence(cfg: &RunConfig, precisions: &[f64], allow_large: bool) -> Result<ConvergenceTable, CliError> {
    if precisions.is_empty() {
        return Err(CliError::new(Stage::Config, "convergence study needs at least one precision"));
    }
    if !cfg.mie_applies() {
        return Err(CliError::new(Stage::Config, "convergence study needs a sphere with a Mie reference"));
    }
    if precisions.len() == 1 {
        log::warn!("a single precision gives no convergence slope");
    }
    let mut rows = Vec::new();
    for &r in precisions {
        let run = RunConfig { r, ..cfg.clone() };
        let out = solve_case(&run, allow_large)?;
        let s = out.summary;
        let max = |f: fn(&mtf::post::InterfaceJump) -> f64| s.jump_errors.iter().map(f).reduce(f64::max);
        rows.push(ConvergenceRow {
            r,
            h: s.h,
            n: s.n,
            rcs_error: s.rcs_error.expect("Mie reference applies"),
            jump_dirichlet: max(|j| j.dirichlet),
            jump_neumann: max(|j| j.neumann),
        });
    }
    let h: Vec<f64> = rows.iter().map(|r| r.h).collect();
    let column = |f: fn(&ConvergenceRow) -> Option<f64>| -> Option<Vec<f64>> { rows.iter().map(f).collect() };
    Ok(ConvergenceTable {
        rcs_slope: slope(&h, &rows.iter().map(|r| r.rcs_error).collect::<Vec<_>>()),
        jump_dirichlet_slope: column(|r| r.jump_dirichlet).and_then(|e| slope(&h, &e)),
        jump_neumann_slope: column(|r| r.jump_neumann).and_then(|e| slope(&h, &e)),
        rows,
    })
}

/// Rows per precision followed by a `slope` row.
pub fn write_convergence(dir: &Path, table: &ConvergenceTable) -> Result<(), CliError> {
    output::ensure_dir(dir)?;
    let mut rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| vec![num(r.r), num(r.h), r.n.to_string(), num(r.rcs_error), opt(r.jump_dirichlet), opt(r.jump_neumann)])
        .collect();
    rows.push(vec![
        "slope".into(),
        String::new(),
        String::new(),
        opt(table.rcs_slope),
        opt(table.jump_dirichlet_slope),
        opt(table.jump_neumann_slope),
    ]);
    output::write_csv(&dir.join("convergence.csv"), &["r", "h", "N", "rcs_error", "jump_dirichlet", "jump_neumann"], &rows)?;
    output::write_json(&dir.join("convergence.json"), table)
}

#[derive(Debug, Clone, Serialize)]
pub struct PrecondRun {
    pub r: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub kind: PrecondKind,
    pub iterations: usize,
    pub converged: bool,
    pub final_residual: f64,
    pub t_precond: f64,
    pub t_solve: f64,
    #[serde(skip)]
    pub history: Vec<f64>,
}

/// GMRES with each preconditioner kind at each precision; the system is
/// assembled once per precision.
pub fn run_precond_study(
    cfg: &RunConfig,
    kinds: &[PrecondKind],
    precisions: &[f64],
    allow_large: bool,
) -> Result<Vec<PrecondRun>, CliError> {
    if cfg.formulation != Formulation::Mtf || cfg.solver != SolverKind::Gmres {
        return Err(CliError::new(Stage::Config, "preconditioner study needs the multiple-traces formulation with GMRES"));
    }
    if kinds.is_empty() || precisions.is_empty() {
        return Err(CliError::new(Stage::Config, "preconditioner study needs at least one kind and one precision"));
    }
    let mut runs = Vec::new();
    for &r in precisions {
        let run = RunConfig { r, ..cfg.clone() };
        let (system, materials, _) = assemble(&run, prepare(&run, allow_large)?)?;
        let b = rhs(&run, &system, &materials)?;
        for &kind in kinds {
            let (rep, t_precond) = solve_gmres(&run, &system, &materials, &b, kind)?;
            log::info!("r = {r}, {kind}: {} iterations, converged = {}", rep.iterations, rep.converged);
            runs.push(PrecondRun {
                r,
                n: system.dim(),
                kind,
                iterations: rep.iterations,
                converged: rep.converged,
                final_residual: *rep.history.last().expect("history starts at 1"),
                t_precond,
                t_solve: rep.seconds,
                history: rep.history,
            });
        }
    }
    Ok(runs)
}

pub fn write_precond_study(dir: &Path, runs: &[PrecondRun]) -> Result<(), CliError> {
    output::ensure_dir(dir)?;
    for run in runs {
        output::write_history(&dir.join(format!("history_r{}_{}.csv", run.r, run.kind)), &run.history)?;
    }
    let rows: Vec<Vec<String>> = runs
        .iter()
        .map(|x| vec![num(x.r), x.n.to_string(), x.kind.to_string(), x.iterations.to_string(), x.converged.to_string(), num(x.final_residual)])
        .collect();
    output::write_csv(&dir.join("precond_study.csv"), &["r", "N", "kind", "iterations", "converged", "final_residual"], &rows)?;
    output::write_json(&dir.join("precond_study.json"), &runs)
}

/// Radius vector of the cuboid family with `m` inclusions: a central block
/// of half-width 0.5 surrounded by equally thick shells out to `outer`.
pub fn cuboid_radii(m: usize, outer: f64) -> Result<Vec<f64>, CliError> {
    if m == 0 {
        return Err(CliError::new(Stage::Config, "need at least one inclusion"));
    }
    if m == 1 {
        return Ok(vec![0.0, outer]);
    }
    if !(outer > 0.5) {
        return Err(CliError::new(Stage::Config, format!("outer half-width {outer} must exceed 0.5")));
    }
    let shells = (m - 1) as f64;
    Ok(std::iter::once(0.0).chain((0..m).map(|i| 0.5 + (outer - 0.5) * i as f64 / shells)).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub n_gmres: Option<usize>,
    pub converged: bool,
    pub t_assembly: f64,
    pub t_solve: f64,
    /// Relative L² distance of `RCS_z` from the one-inclusion run.
    pub rcs_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingTable {
    pub rows: Vec<ScalingRow>,
    pub n_gmres_exponent: Option<f64>,
    pub t_solve_exponent: Option<f64>,
}

/// Concentric cuboids with `m` identical inclusions for each `m`.
pub fn run_scaling(cfg: &RunConfig, counts: &[usize], allow_large: bool) -> Result<ScalingTable, CliError> {
    if counts.is_empty() {
        return Err(CliError::new(Stage::Config, "scaling study needs at least one inclusion count"));
    }
    if cfg.materials.len() < 2 {
        return Err(CliError::new(Stage::Config, "scaling study needs an inclusion material"));
    }
    let inclusion = cfg.materials[1];
    let case = |m: usize| -> Result<RunConfig, CliError> {
        let mut run = cfg.clone();
        run.geometry = GeometrySpec::ConcentricCuboids { radii: cuboid_radii(m, cfg.study.outer)?, height: cfg.study.height };
        run.materials = std::iter::once(cfg.materials[0]).chain(std::iter::repeat(inclusion).take(m)).collect();
        run.formulation = Formulation::Mtf;
        Ok(run)
    };
    let mut runs = Vec::new();
    let mut reference = None;
    let mut order: Vec<usize> = counts.to_vec();
    if !order.contains(&1) {
        order.insert(0, 1);
    }
    for &m in &order {
        let out = solve_case(&case(m)?, allow_large)?;
        if m == 1 {
            reference = Some(out.rcs.computed.clone());
        }
        runs.push((m, out));
    }
    let reference = reference.expect("one-inclusion run present");
    let mut rows = Vec::new();
    for (m, out) in runs.into_iter().filter(|(m, _)| counts.contains(m)) {
        let s = &out.summary;
        rows.push(ScalingRow {
            m,
            n: s.n,
            n_gmres: s.n_gmres,
            converged: s.converged,
            t_assembly: s.t_assembly,
            t_solve: s.t_solve,
            rcs_deviation: rel_l2(&out.rcs.theta, &out.rcs.computed, &reference).stage(Stage::Post)?,
        });
    }
    let ms: Vec<f64> = rows.iter().map(|r| r.m as f64).collect();
    let iters: Option<Vec<f64>> = rows.iter().map(|r| r.n_gmres.map(|n| n as f64)).collect();
    Ok(ScalingTable {
        n_gmres_exponent: iters.and_then(|it| slope(&ms, &it)),
        t_solve_exponent: slope(&ms, &rows.iter().map(|r| r.t_solve).collect::<Vec<_>>()),
        rows,
    })
}

pub fn write_scaling(dir: &Path, table: &ScalingTable) -> Result<(), CliError> {
    output::ensure_dir(dir)?;
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| {
            vec![
                r.m.to_string(),
                r.n.to_string(),
                r.n_gmres.map(|n| n.to_string()).unwrap_or_default(),
                r.converged.to_string(),
                format!("{:.3}", r.t_solve),
                num(r.rcs_deviation),
            ]
        })
        .collect();
    output::write_csv(&dir.join("scaling.csv"), &["M", "N", "n_gmres", "converged", "t_solve", "rcs_deviation"], &rows)?;
    output::write_json(&dir.join("scaling.json"), table)
}

/// Default cap on the size of a materialized spectrum.
pub const SPECTRUM_CAP: usize = 4000;

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    #[serde(rename = "N")]
    pub n: usize,
    pub kind: PrecondKind,
    pub min_abs_raw: f64,
    pub max_abs_raw: f64,
    pub min_abs_preconditioned: f64,
    pub max_abs_preconditioned: f64,
    #[serde(skip)]
    pub raw: Vec<C64>,
    #[serde(skip)]
    pub preconditioned: Vec<C64>,
}

/// Eigenvalues of the MTF matrix and of the preconditioned operator `P M`.
pub fn run_spectrum(cfg: &RunConfig, cap: usize) -> Result<SpectrumSummary, CliError> {
    if cfg.formulation != Formulation::Mtf {
        return Err(CliError::new(Stage::Config, "spectra are computed for the multiple-traces formulation"));
    }
    let prepared = prepare(cfg, true)?;
    if prepared.unknowns > cap {
        return Err(CliError::new(Stage::Config, format!("system size {} exceeds the spectrum cap {cap}", prepared.unknowns)));
    }
    let (system, materials, _) = assemble(cfg, prepared)?;
    let Assembled::Mtf(sys) = &system else { unreachable!("formulation checked") };
    let n = sys.dim();
    let raw = spectrum(&sys.to_dense(), cap).stage(Stage::Solve)?;
    let p = BlockPreconditioner::build(cfg.preconditioner, sys, &materials, cfg.osrc.into()).stage(Stage::Precond)?;
    let pm = |x: &[C64], y: &mut [C64]| {
        let mut t = vec![C64::new(0.0, 0.0); n];
        sys.apply(x, &mut t);
        p.apply(&t, y);
    };
    let preconditioned = spectrum(&materialize(n, &pm, cap).stage(Stage::Solve)?, cap).stage(Stage::Solve)?;
    let lo = |v: &[C64]| v.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    let hi = |v: &[C64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(SpectrumSummary {
        n,
        kind: cfg.preconditioner,
        min_abs_raw: lo(&raw),
        max_abs_raw: hi(&raw),
        min_abs_preconditioned: lo(&preconditioned),
        max_abs_preconditioned: hi(&preconditioned),
        raw,
        preconditioned,
    })
}

pub fn write_spectrum(dir: &Path, s: &SpectrumSummary) -> Result<(), CliError> {
    output::ensure_dir(dir)?;
    let rows: Vec<Vec<String>> = s
        .raw
        .iter()
        .map(|z| ("raw", z))
        .chain(s.preconditioned.iter().map(|z| ("preconditioned", z)))
        .map(|(op, z)| vec![op.to_string(), num(z.re), num(z.im)])
        .collect();
    output::write_csv(&dir.join("spectrum.csv"), &["operator", "re", "im"], &rows)?;
    output::write_json(&dir.join("spectrum.json"), s)
}

#[derive(Debug, Clone, Serialize)]
pub struct MeshSummary {
    pub geometry: String,
    pub h: f64,
    pub vertices: usize,
    pub triangles: usize,
    pub subdomains: usize,
    /// `(i, j, triangle count)` per interface.
    pub interfaces: Vec<(usize, usize, usize)>,
    pub max_edge: f64,
    pub unknowns: usize,
}

/// Generates (or reads) the skeleton, validates it and writes it as `.msh`.
pub fn run_mesh(cfg: &RunConfig, dir: &Path) -> Result<MeshSummary, CliError> {
    let prepared = prepare(cfg, true)?;
    let mesh = &prepared.mesh;
    let report = validate_mesh(mesh);
    if !report.is_valid() {
        return Err(CliError::new(Stage::Mesh, format!("{:?}", report.violations)));
    }
    let interfaces = mesh
        .interface_tags()
        .into_iter()
        .map(|t| (t.lo, t.hi, mesh.tags.iter().filter(|x| **x == t).count()))
        .collect();
    output::ensure_dir(dir)?;
    write_msh(mesh, &dir.join("mesh.msh")).stage(Stage::Output)?;
    let summary = MeshSummary {
        geometry: cfg.geometry.name().into(),
        h: prepared.h,
        vertices: mesh.vertices.len(),
        triangles: mesh.triangles.len(),
        subdomains: mesh.num_subdomains(),
        interfaces,
        max_edge: mesh.max_edge_length(),
        unknowns: prepared.unknowns,
    };
    output::write_json(&dir.join("mesh.json"), &summary)?;
    Ok(summary)
}
