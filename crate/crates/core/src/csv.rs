//! CSV emission and parsing for solver output and input tables.
//!
//! Emitted files are UTF-8 with LF line endings and 17-significant-digit
//! decimals, so re-reading reproduces every f64 bit-exactly.

use crate::error::{Error, Result};
use crate::solver::Response;
use std::fmt::Write as _;
use std::path::Path;

/// 17 significant digits: enough to round-trip any f64.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io { path: path.display().to_string(), msg: e.to_string() }
}

/// One row of a sweep file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub sweep_param: f64,
    pub k: i64,
    pub y: f64,
}

/// Long-format sweep CSV with header `sweep_param,k,y`, one row per grid
/// point per curve, curves in the given order.
pub fn render_sweep_csv(curves: &[(f64, &Response)]) -> String {
    let mut out = String::from("sweep_param,k,y\n");
    for (param, response) in curves {
        let p = format_f64(*param);
        for (i, &v) in response.values().iter().enumerate() {
            let k = response.origin() + 1 + i as i64;
            let _ = writeln!(out, "{p},{k},{}", format_f64(v));
        }
    }
    out
}

pub fn write_sweep_csv(path: &Path, curves: &[(f64, &Response)]) -> Result<()> {
    std::fs::write(path, render_sweep_csv(curves)).map_err(|e| io_err(path, e))
}

pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "sweep_param,k,y")) => {}
        _ => {
            return Err(Error::InvalidArgument(
                "sweep csv must start with the header sweep_param,k,y".into(),
            ))
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (Some(p), Some(k), Some(y), None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(Error::InvalidArgument(format!(
                "sweep csv line {}: expected 3 comma-separated fields",
                i + 1
            )));
        };
        let parse = |s: &str, what: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| {
                Error::InvalidArgument(format!("sweep csv line {}: bad {what} `{s}`", i + 1))
            })
        };
        rows.push(SweepRow {
            sweep_param: parse(p, "sweep_param")?,
            k: k.parse::<i64>().map_err(|_| {
                Error::InvalidArgument(format!("sweep csv line {}: bad k `{k}`", i + 1))
            })?,
            y: parse(y, "y")?,
        });
    }
    Ok(rows)
}

pub fn read_sweep_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_sweep_csv(&text)
}

/// Input table CSV with header `k,u`; rows must be consecutive grid points.
/// Returns the first grid point and the values.
pub fn read_input_csv(path: &Path) -> Result<(i64, Vec<f64>)> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "k,u")) => {}
        _ => {
            return Err(Error::InvalidArgument(
                "input csv must start with the header k,u".into(),
            ))
        }
    }
    let mut first_k = None;
    let mut values = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (Some(k), Some(u), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::InvalidArgument(format!(
                "input csv line {}: expected 2 comma-separated fields",
                i + 1
            )));
        };
        let k: i64 = k.parse().map_err(|_| {
            Error::InvalidArgument(format!("input csv line {}: bad k `{k}`", i + 1))
        })?;
        let u: f64 = u.parse().map_err(|_| {
            Error::InvalidArgument(format!("input csv line {}: bad u `{u}`", i + 1))
        })?;
        match first_k {
            None => first_k = Some(k),
            Some(f) if k != f + values.len() as i64 => {
                return Err(Error::InvalidArgument(format!(
                    "input csv line {}: grid points must be consecutive (expected {}, got {k})",
                    i + 1,
                    f + values.len() as i64
                )));
            }
            _ => {}
        }
        values.push(u);
    }
    let first_k = first_k.ok_or_else(|| {
        Error::InvalidArgument("input csv has a header but no rows".into())
    })?;
    Ok((first_k, values))
}
