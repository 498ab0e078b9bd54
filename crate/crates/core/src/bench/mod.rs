//! Experiment grids, result tables and performance profiles.
//!
//! A grid crosses a list of problems with a list of solver configurations.
//! Each cell is solved independently and summarised as a [`CellResult`];
//! the table of results is written as CSV and can be turned into
//! performance profiles with [`profile::performance_profile`].

pub mod config_file;
pub mod io;
pub mod profile;

use std::path::Path;
use std::time::Instant;

use crate::driver::{rose_minimize, RoseConfig, RoseResult, SeedMode, Status, UNLIMITED_MEMORY};
use crate::error::{Error, Result};
use crate::problems::{
    make_quadratic_benchmark, make_toy_nonconvex, Quadratic, StructuredObjective,
};
use crate::scaling::BoundChoice;

/// A problem instance of a grid together with its starting point.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemKind {
    /// The 16-dimensional quadratic benchmark, started at zero.
    Quadratic { alpha: f64, stencil_scale: f64 },
    /// The non-convex toy problem on `n` unknowns.
    ToyNonconvex { n: usize, alpha: f64 },
    /// `0.5 |x|^2` in `n` dimensions, started at `(1, ..., 1)`.
    HalfNorm { n: usize },
}

impl ProblemKind {
    pub fn alpha(&self) -> f64 {
        match self {
            ProblemKind::Quadratic { alpha, .. } | ProblemKind::ToyNonconvex { alpha, .. } => {
                *alpha
            }
            ProblemKind::HalfNorm { .. } => 0.0,
        }
    }

    fn solve(&self, cfg: &RoseConfig) -> Result<RoseResult> {
        match self {
            ProblemKind::Quadratic {
                alpha,
                stencil_scale,
            } => {
                let p = make_quadratic_benchmark(*alpha, *stencil_scale)?;
                rose_minimize(&p, &vec![0.0; p.dim()], cfg)
            }
            ProblemKind::ToyNonconvex { n, alpha } => {
                let p = make_toy_nonconvex(*n, *alpha)?;
                rose_minimize(&p, &toy_start(*n), cfg)
            }
            ProblemKind::HalfNorm { n } => {
                let p = Quadratic::half_norm_squared(*n);
                rose_minimize(&p, &vec![1.0; *n], cfg)
            }
        }
    }
}

/// Deterministic starting point for the toy problem, spread over
/// `[-2.5, 2.5]` so several cosine terms start in their concave region.
pub fn toy_start(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 2.5 * ((i as f64) * 0.7 + 0.3).sin())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub name: String,
    pub kind: ProblemKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpec {
    pub name: String,
    pub config: RoseConfig,
}

/// Which quantity is compared in a performance profile. Smaller is better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Runtime,
    Iterations,
    FEvals,
    InnerIterations,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "runtime" => Ok(Metric::Runtime),
            "iterations" => Ok(Metric::Iterations),
            "f_evals" | "f-evals" => Ok(Metric::FEvals),
            "inner_iterations" | "inner-iterations" => Ok(Metric::InnerIterations),
            other => Err(Error::InvalidInput(format!("unknown metric {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentGrid {
    pub problems: Vec<ProblemSpec>,
    pub methods: Vec<MethodSpec>,
    pub metric: Metric,
    /// Runs per cell; the reported runtime is the median.
    pub repeats: usize,
}

/// Summary of one `(problem, method)` cell. Mirrors the results CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub problem: String,
    pub method: String,
    pub alpha: f64,
    /// `None` for unlimited memory.
    pub memory: Option<usize>,
    pub iterations: usize,
    pub f_evals: usize,
    pub inner_iters_total: usize,
    pub runtime_ms: f64,
    pub final_grad_norm: f64,
    pub status: Status,
}

impl CellResult {
    pub fn solved(&self) -> bool {
        self.status.converged()
    }

    /// The cell's value for `metric`, `inf` if the problem was not solved.
    pub fn metric(&self, metric: Metric) -> f64 {
        if !self.solved() {
            return f64::INFINITY;
        }
        match metric {
            Metric::Runtime => self.runtime_ms,
            Metric::Iterations => self.iterations as f64,
            Metric::FEvals => self.f_evals as f64,
            Metric::InnerIterations => self.inner_iters_total as f64,
        }
    }
}

/// Output of [`run_grid`]: cells in problem-major order and, per cell, the
/// full solver result of the last repeat (absent when the solver errored).
pub struct GridRun {
    pub cells: Vec<CellResult>,
    pub results: Vec<Option<RoseResult>>,
    pub problem_count: usize,
    pub method_count: usize,
}

impl GridRun {
    /// `t[p][s]` for the given metric.
    pub fn metric_matrix(&self, metric: Metric) -> Vec<Vec<f64>> {
        self.cells
            .chunks(self.method_count)
            .map(|row| row.iter().map(|c| c.metric(metric)).collect())
            .collect()
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Runs every cell of the grid. Cells that fail are recorded with an
/// infinite metric and never abort the grid.
pub fn run_grid(grid: &ExperimentGrid) -> Result<GridRun> {
    if grid.problems.is_empty() || grid.methods.is_empty() {
        return Err(Error::InvalidInput(
            "grid needs at least one problem and one method".into(),
        ));
    }
    let repeats = grid.repeats.max(1);
    let mut cells = Vec::with_capacity(grid.problems.len() * grid.methods.len());
    let mut results = Vec::with_capacity(cells.capacity());

    for p in &grid.problems {
        for m in &grid.methods {
            let mut times = Vec::with_capacity(repeats);
            let mut last = None;
            for _ in 0..repeats {
                let start = Instant::now();
                let res = p.kind.solve(&m.config);
                times.push(start.elapsed().as_secs_f64() * 1e3);
                last = Some(res);
            }
            let res = last.expect("at least one repeat");
            let memory = (m.config.memory != UNLIMITED_MEMORY).then_some(m.config.memory);
            let cell = match &res {
                Ok(r) => CellResult {
                    problem: p.name.clone(),
                    method: m.name.clone(),
                    alpha: p.kind.alpha(),
                    memory,
                    iterations: r.iterations(),
                    f_evals: r.f_evals(),
                    inner_iters_total: r.inner_iterations(),
                    runtime_ms: median(times),
                    final_grad_norm: r.grad_norm,
                    status: r.status,
                },
                Err(e) => {
                    log::warn!("cell ({}, {}) failed: {e}", p.name, m.name);
                    CellResult {
                        problem: p.name.clone(),
                        method: m.name.clone(),
                        alpha: p.kind.alpha(),
                        memory,
                        iterations: 0,
                        f_evals: 0,
                        inner_iters_total: 0,
                        runtime_ms: median(times),
                        final_grad_norm: f64::NAN,
                        status: Status::LineSearchFail,
                    }
                }
            };
            cells.push(cell);
            results.push(res.ok());
        }
    }

    Ok(GridRun {
        cells,
        results,
        problem_count: grid.problems.len(),
        method_count: grid.methods.len(),
    })
}

/// Builds the configuration for a named method on top of `base`.
///
/// Names are `rose-{ds,dg}-{full,upperz,bbband}` for diagonal seeds and
/// `scalar-{taus,taug,tauz}` for scalar seeds (full cautious interval).
pub fn method_config(name: &str, base: &RoseConfig) -> Result<RoseConfig> {
    let (seed_mode, bound_choice) = match name {
        "scalar-taus" => (SeedMode::ScalarTauS, BoundChoice::Full),
        "scalar-taug" => (SeedMode::ScalarTauG, BoundChoice::Full),
        "scalar-tauz" => (SeedMode::ScalarTauZ, BoundChoice::Full),
        _ => {
            let rest = name
                .strip_prefix("rose-")
                .ok_or_else(|| Error::InvalidInput(format!("unknown method {name:?}")))?;
            let (formula, bounds) = rest
                .split_once('-')
                .ok_or_else(|| Error::InvalidInput(format!("unknown method {name:?}")))?;
            let mode = match formula {
                "ds" => SeedMode::DiagonalDs,
                "dg" => SeedMode::DiagonalDg,
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "unknown seed formula in {name:?}"
                    )))
                }
            };
            let choice = match bounds {
                "full" => BoundChoice::Full,
                "upperz" => BoundChoice::UpperZ,
                "bbband" => BoundChoice::BbBand,
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "unknown bound choice in {name:?}"
                    )))
                }
            };
            (mode, choice)
        }
    };
    Ok(RoseConfig {
        seed_mode,
        bound_choice,
        ..base.clone()
    })
}

/// Parses a memory size; `inf` means unlimited.
pub fn parse_memory(s: &str) -> Result<usize> {
    match s.trim() {
        "inf" | "Inf" | "infinity" => Ok(UNLIMITED_MEMORY),
        t => t
            .parse()
            .map_err(|_| Error::InvalidInput(format!("invalid memory size {t:?}"))),
    }
}

pub fn format_memory(memory: Option<usize>) -> String {
    memory.map_or_else(|| "inf".to_string(), |m| m.to_string())
}

/// Writes one CSV trace per solved cell into `dir`.
pub fn write_traces(run: &GridRun, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
    for (cell, res) in run.cells.iter().zip(&run.results) {
        let Some(res) = res else { continue };
        let file = format!(
            "{}__alpha{}__{}__m{}.csv",
            sanitize(&cell.problem),
            cell.alpha,
            sanitize(&cell.method),
            format_memory(cell.memory)
        );
        io::write_trace(&dir.join(file), &res.records)?;
    }
    Ok(())
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}
