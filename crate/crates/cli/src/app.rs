//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mtf::bio::Precision;
use mtf::precond::PrecondKind;

use crate::config::{Formulation, GeometrySpec, Preset, RunConfig, SolverKind};
use crate::error::{CliError, Stage};
use crate::runner::run_case;
use crate::studies::*;

/// Exit code of a run that failed at some stage.
pub const EXIT_FAILURE: i32 = 2;
/// Exit code under `--strict` when GMRES did not converge.
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mtf", version, about = "Multiple-traces BEM experiments for dielectric scatterers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate and validate the skeleton mesh, write it as .msh.
    Mesh(Common),
    /// Solve one configuration and post-process it.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Exit with code 3 when GMRES does not converge.
        #[arg(long)]
        strict: bool,
    },
    /// h-convergence against the Mie reference.
    Convergence {
        #[command(flatten)]
        common: Common,
        /// Points per wavelength, comma separated.
        #[arg(long, value_delimiter = ',')]
        precisions: Option<Vec<f64>>,
    },
    /// GMRES histories for several preconditioners and precisions.
    PrecondStudy {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        kinds: Option<Vec<PrecondKind>>,
        #[arg(long, value_delimiter = ',')]
        precisions: Option<Vec<f64>>,
        #[arg(long)]
        strict: bool,
    },
    /// Concentric cuboids with a growing number of inclusions.
    Scaling {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        counts: Option<Vec<usize>>,
        #[arg(long)]
        strict: bool,
    },
    /// Eigenvalues of the raw and the preconditioned operator.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = SPECTRUM_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GeometryArg {
    Sphere,
    SplitSphere,
    HalfCube,
    ConcentricCuboids,
}

/// Config source and per-field overrides.
#[derive(Debug, Args)]
pub struct Common {
    /// TOML run configuration; without it a preset is used.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// case-a or case-b.
    #[arg(long, default_value = "case-a")]
    pub preset: String,
    #[arg(long, value_enum)]
    pub geometry: Option<GeometryArg>,
    /// Gmsh skeleton file; requires --tag entries.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Physical tag mapping `tag=from,to`, repeatable.
    #[arg(long = "tag")]
    pub tags: Vec<String>,
    /// Points per wavelength.
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub k0: Option<f64>,
    #[arg(long)]
    pub formulation: Option<String>,
    #[arg(long)]
    pub solver: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub maxit: Option<usize>,
    #[arg(long)]
    pub preconditioner: Option<PrecondKind>,
    /// double or single storage of dense blocks.
    #[arg(long)]
    pub precision: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Lift the cap on the number of unknowns.
    #[arg(long)]
    pub allow_large: bool,
}

fn parse_enum<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> Result<T, CliError> {
    serde_json::from_value(serde_json::Value::String(s.into()))
        .map_err(|_| CliError::new(Stage::Config, format!("invalid {what} `{s}`")))
}

impl Common {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let preset: Preset = self.preset.parse()?;
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => {
                let geometry = match self.geometry.unwrap_or(GeometryArg::Sphere) {
                    GeometryArg::Sphere => GeometrySpec::Sphere { radius: 1.0 },
                    GeometryArg::SplitSphere => GeometrySpec::SplitSphere { radius: 1.0 },
                    GeometryArg::HalfCube => GeometrySpec::HalfCube { extents: [1.0; 3] },
                    GeometryArg::ConcentricCuboids => GeometrySpec::ConcentricCuboids { radii: vec![0.0, 0.5, 1.7], height: 1.0 },
                };
                RunConfig::preset(preset, geometry)
            }
        };
        if let Some(path) = &self.mesh {
            let mut tags = std::collections::BTreeMap::new();
            for t in &self.tags {
                let (tag, pair) = t
                    .split_once('=')
                    .ok_or_else(|| CliError::new(Stage::Config, format!("tag `{t}` must read tag=from,to")))?;
                tags.insert(tag.trim().to_string(), pair.trim().to_string());
            }
            cfg.geometry = GeometrySpec::Msh { path: path.clone(), tags };
        }
        if let Some(r) = self.r {
            cfg.r = r;
        }
        if let Some(k0) = self.k0 {
            cfg.k0 = Some(k0);
            cfg.frequency = None;
        }
        if let Some(f) = &self.formulation {
            cfg.formulation = parse_enum::<Formulation>("formulation", f)?;
        }
        if let Some(s) = &self.solver {
            cfg.solver = parse_enum::<SolverKind>("solver", s)?;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(m) = self.maxit {
            cfg.maxit = m;
        }
        if let Some(p) = self.preconditioner {
            cfg.preconditioner = p;
        }
        if let Some(p) = &self.precision {
            cfg.precision = parse_enum::<Precision>("precision", p)?;
        }
        if let Some(o) = &self.output {
            cfg.output = o.clone();
        }
        if !matches!(cfg.geometry, GeometrySpec::Msh { .. }) {
            cfg.validate()?;
        }
        Ok(cfg)
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn execute(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

fn strict_code(strict: bool, converged: bool) -> i32 {
    if strict && !converged {
        EXIT_NOT_CONVERGED
    } else {
        0
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Mesh(common) => {
            let cfg = common.config()?;
            let s = run_mesh(&cfg, &cfg.output)?;
            println!("{}", serde_json::to_string_pretty(&s).expect("serializable"));
            Ok(0)
        }
        Command::Solve { common, strict } => {
            let cfg = common.config()?;
            let s = run_case(&cfg, common.allow_large, &cfg.output)?;
            println!("{}", serde_json::to_string_pretty(&s).expect("serializable"));
            Ok(strict_code(strict, s.converged))
        }
        Command::Convergence { common, precisions } => {
            let cfg = common.config()?;
            let rs = precisions.unwrap_or_else(|| cfg.study.precisions.clone());
            let table = run_convergence(&cfg, &rs, common.allow_large)?;
            write_convergence(&cfg.output, &table)?;
            println!("{}", serde_json::to_string_pretty(&table).expect("serializable"));
            Ok(0)
        }
        Command::PrecondStudy { common, kinds, precisions, strict } => {
            let cfg = common.config()?;
            let kinds = kinds.unwrap_or_else(|| cfg.study.kinds.clone());
            let rs = precisions.unwrap_or_else(|| cfg.study.precisions.clone());
            let runs = run_precond_study(&cfg, &kinds, &rs, common.allow_large)?;
            write_precond_study(&cfg.output, &runs)?;
            println!("{}", serde_json::to_string_pretty(&runs).expect("serializable"));
            Ok(strict_code(strict, runs.iter().all(|r| r.converged)))
        }
        Command::Scaling { common, counts, strict } => {
            let cfg = common.config()?;
            let counts = counts.unwrap_or_else(|| cfg.study.counts.clone());
            let table = run_scaling(&cfg, &counts, common.allow_large)?;
            write_scaling(&cfg.output, &table)?;
            println!("{}", serde_json::to_string_pretty(&table).expect("serializable"));
            Ok(strict_code(strict, table.rows.iter().all(|r| r.converged)))
        }
        Command::Spectrum { common, cap } => {
            let cfg = common.config()?;
            let s = run_spectrum(&cfg, cap)?;
            write_spectrum(&cfg.output, &s)?;
            println!("{}", serde_json::to_string_pretty(&s).expect("serializable"));
            Ok(0)
        }
    }
}
