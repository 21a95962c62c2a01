//! JSON and CSV writers. Numbers are printed with a fixed format so reruns
//! produce identical files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use mtf::geom::{CVec, Point};
use mtf::post::InterfaceJump;
use serde::Serialize;

use crate::error::{CliError, Stage};
use crate::runner::RcsTable;

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::new(Stage::Output, format!("{}: {e}", path.display()))
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| io_err(path, e))?;
    std::fs::write(path, text + "\n").map_err(|e| io_err(path, e))
}

/// Writes a header and rows of preformatted cells.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    let mut emit = || -> std::io::Result<()> {
        writeln!(w, "{}", header.join(","))?;
        for row in rows {
            writeln!(w, "{}", row.join(","))?;
        }
        w.flush()
    };
    emit().map_err(|e| io_err(path, e))
}

pub fn num(v: f64) -> String {
    format!("{v:.12e}")
}

pub fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn write_rcs(path: &Path, rcs: &RcsTable) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = rcs
        .theta
        .iter()
        .enumerate()
        .map(|(i, t)| vec![num(*t), opt(rcs.reference.as_ref().map(|r| r[i])), num(rcs.computed[i])])
        .collect();
    write_csv(path, &["theta", "rcs_reference", "rcs_computed"], &rows)
}

pub fn write_history(path: &Path, history: &[f64]) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = history.iter().enumerate().map(|(i, r)| vec![i.to_string(), num(*r)]).collect();
    write_csv(path, &["iteration", "relative_residual"], &rows)
}

pub fn write_jumps(path: &Path, jumps: &[InterfaceJump]) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> =
        jumps.iter().map(|j| vec![j.i.to_string(), j.j.to_string(), num(j.dirichlet), num(j.neumann)]).collect();
    write_csv(path, &["i", "j", "dirichlet", "neumann"], &rows)
}

/// Points too close to a surface have empty field cells.
pub fn write_near_field(path: &Path, grid: &[(Point, Option<CVec>)]) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = grid
        .iter()
        .map(|(x, e)| {
            let mut row: Vec<String> = x.iter().map(|v| num(*v)).collect();
            match e {
                Some(e) => {
                    row.push(num(e.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()));
                    for c in e {
                        row.push(num(c.re));
                        row.push(num(c.im));
                    }
                }
                None => row.extend(std::iter::repeat(String::new()).take(7)),
            }
            row
        })
        .collect();
    write_csv(path, &["x", "y", "z", "abs_e", "ex_re", "ex_im", "ey_re", "ey_im", "ez_re", "ez_im"], &rows)
}
