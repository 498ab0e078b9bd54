//! CSV files: grid results, performance profiles and per-iteration traces.
//!
//! All files carry a header row, use `,` as separator and `.` as decimal
//! point. Floats are written in shortest round-trip form, so reading a file
//! back yields bit-identical values.

use std::path::Path;

use crate::bench::profile::ProfileCurve;
use crate::bench::{format_memory, parse_memory, CellResult, Metric};
use crate::driver::{IterationRecord, UNLIMITED_MEMORY};
use crate::error::{Error, Result};

pub const RESULTS_HEADER: [&str; 10] = [
    "problem",
    "method",
    "alpha",
    "memory",
    "iterations",
    "f_evals",
    "inner_iters_total",
    "runtime_ms",
    "final_grad_norm",
    "status",
];

pub const PROFILE_HEADER: [&str; 3] = ["method", "tau", "rho"];

pub const TRACE_HEADER: [&str; 9] = [
    "k",
    "value",
    "grad_norm",
    "alpha",
    "f_evals",
    "inner_iterations",
    "pair_accepted",
    "seed_lower",
    "seed_upper",
];

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

pub fn write_results<W: std::io::Write>(out: W, cells: &[CellResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_HEADER).map_err(io_err)?;
    for c in cells {
        w.write_record([
            c.problem.clone(),
            c.method.clone(),
            c.alpha.to_string(),
            format_memory(c.memory),
            c.iterations.to_string(),
            c.f_evals.to_string(),
            c.inner_iters_total.to_string(),
            c.runtime_ms.to_string(),
            c.final_grad_norm.to_string(),
            c.status.to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: usize) -> Result<T> {
    let raw = rec
        .get(i)
        .ok_or_else(|| Error::InvalidInput(format!("row {line}: missing column {}", i + 1)))?;
    raw.parse().map_err(|_| {
        Error::InvalidInput(format!(
            "row {line}: cannot parse {raw:?} in column {}",
            i + 1
        ))
    })
}

pub fn read_results<R: std::io::Read>(input: R) -> Result<Vec<CellResult>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(io_err)?.clone();
    if header.iter().ne(RESULTS_HEADER.iter().copied()) {
        return Err(Error::InvalidInput(format!(
            "unexpected results header {header:?}"
        )));
    }
    let mut cells = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(io_err)?;
        let line = line + 2;
        let memory = parse_memory(rec.get(3).unwrap_or(""))?;
        cells.push(CellResult {
            problem: field(&rec, 0, line)?,
            method: field(&rec, 1, line)?,
            alpha: field(&rec, 2, line)?,
            memory: (memory != UNLIMITED_MEMORY).then_some(memory),
            iterations: field(&rec, 4, line)?,
            f_evals: field(&rec, 5, line)?,
            inner_iters_total: field(&rec, 6, line)?,
            runtime_ms: field(&rec, 7, line)?,
            final_grad_norm: field(&rec, 8, line)?,
            status: field(&rec, 9, line)?,
        });
    }
    Ok(cells)
}

pub fn write_results_file(path: &Path, cells: &[CellResult]) -> Result<()> {
    let f = std::fs::File::create(path).map_err(io_err)?;
    write_results(f, cells)
}

pub fn read_results_file(path: &Path) -> Result<Vec<CellResult>> {
    let f = std::fs::File::open(path).map_err(io_err)?;
    read_results(f)
}

pub fn write_profile<W: std::io::Write>(out: W, curves: &[ProfileCurve]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PROFILE_HEADER).map_err(io_err)?;
    for c in curves {
        for (tau, rho) in &c.points {
            w.write_record([c.method.clone(), tau.to_string(), rho.to_string()])
                .map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)
}

/// Reads a profile CSV back into curves, keeping the method order of the
/// file.
pub fn read_profile<R: std::io::Read>(input: R) -> Result<Vec<ProfileCurve>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(io_err)?.clone();
    if header.iter().ne(PROFILE_HEADER.iter().copied()) {
        return Err(Error::InvalidInput(format!(
            "unexpected profile header {header:?}"
        )));
    }
    let mut curves: Vec<ProfileCurve> = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(io_err)?;
        let line = line + 2;
        let method: String = field(&rec, 0, line)?;
        let point = (field(&rec, 1, line)?, field(&rec, 2, line)?);
        match curves.iter_mut().find(|c| c.method == method) {
            Some(c) => c.points.push(point),
            None => curves.push(ProfileCurve {
                method,
                points: vec![point],
            }),
        }
    }
    Ok(curves)
}

pub fn write_trace(path: &Path, records: &[IterationRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(io_err)?;
    w.write_record(TRACE_HEADER).map_err(io_err)?;
    for r in records {
        w.write_record([
            r.k.to_string(),
            r.value.to_string(),
            r.grad_norm.to_string(),
            r.alpha.to_string(),
            r.f_evals.to_string(),
            r.inner_iterations.to_string(),
            r.pair_accepted.to_string(),
            r.seed_interval.0.to_string(),
            r.seed_interval.1.to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Arranges result rows into the `t[p][s]` matrix for a profile.
///
/// Problems are keyed by `(problem, alpha)` and methods by
/// `method/m<memory>`, both in order of first appearance. Missing cells
/// count as failures.
pub fn metric_table(cells: &[CellResult], metric: Metric) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut problems: Vec<String> = Vec::new();
    let mut methods: Vec<String> = Vec::new();
    let key = |c: &CellResult| {
        (
            format!("{}/alpha={}", c.problem, c.alpha),
            format!("{}/m{}", c.method, format_memory(c.memory)),
        )
    };
    for c in cells {
        let (p, m) = key(c);
        if !problems.contains(&p) {
            problems.push(p);
        }
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    let mut t = vec![vec![f64::INFINITY; methods.len()]; problems.len()];
    for c in cells {
        let (p, m) = key(c);
        let i = problems.iter().position(|x| *x == p).unwrap();
        let j = methods.iter().position(|x| *x == m).unwrap();
        t[i][j] = c.metric(metric);
    }
    (methods, t)
}
