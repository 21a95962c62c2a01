//! Experiment runner for the multiple-traces solver: declarative run
//! configurations, single solves and the convergence, preconditioner,
//! scaling and spectrum studies.

pub mod app;
pub mod config;
pub mod error;
pub mod output;
pub mod runner;
pub mod studies;

pub use config::{GeometrySpec, Preset, RunConfig};
pub use error::{CliError, Stage};
