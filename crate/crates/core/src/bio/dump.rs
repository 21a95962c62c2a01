//! Binary dump of dense blocks: one JSON header line, then row-major
//! little-endian complex doubles.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use faer::Mat;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::dense::{DenseBlock, OperatorLabel};
use super::BioError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DumpHeader {
    pub label: OperatorLabel,
    pub rows: usize,
    pub cols: usize,
    pub layout: String,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> BioError {
    BioError::Io { path: path.display().to_string(), message: e.to_string() }
}

pub fn write_block(path: &Path, block: &DenseBlock) -> Result<(), BioError> {
    let header = DumpHeader {
        label: block.label,
        rows: block.nrows(),
        cols: block.ncols(),
        layout: "row-major complex f64 little-endian".into(),
    };
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    let line = serde_json::to_string(&header).map_err(|e| io_err(path, e))?;
    writeln!(w, "{line}").map_err(|e| io_err(path, e))?;
    for i in 0..header.rows {
        for j in 0..header.cols {
            let v = block.get(i, j);
            w.write_all(&v.re.to_le_bytes()).map_err(|e| io_err(path, e))?;
            w.write_all(&v.im.to_le_bytes()).map_err(|e| io_err(path, e))?;
        }
    }
    w.flush().map_err(|e| io_err(path, e))
}

pub fn read_block(path: &Path) -> Result<DenseBlock, BioError> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let mut r = BufReader::new(file);
    let mut line = String::new();
    r.read_line(&mut line).map_err(|e| io_err(path, e))?;
    let header: DumpHeader = serde_json::from_str(line.trim()).map_err(|e| BioError::Format(e.to_string()))?;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes).map_err(|e| io_err(path, e))?;
    if bytes.len() != header.rows * header.cols * 16 {
        return Err(BioError::Format(format!("expected {} payload bytes, found {}", header.rows * header.cols * 16, bytes.len())));
    }
    let f = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().expect("8 bytes"));
    let mat = Mat::from_fn(header.rows, header.cols, |i, j| {
        let o = 16 * (i * header.cols + j);
        C64::new(f(o), f(o + 8))
    });
    Ok(DenseBlock::from_mat(header.label, mat))
}
