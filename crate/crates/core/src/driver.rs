//! The outer structured L-BFGS loop.
//!
//! Each iteration assembles the seed `B0 = D_k + S_k`, computes the search
//! direction with the two-loop recursion (solving with `B0` exactly or by
//! MINRES), takes a line-search step, stores the correction pair if it
//! passes the cautious test and finally refits the diagonal `D_{k+1}` to
//! the structured secant vector `z_k = y_k - S_{k+1} s_k`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::krylov::{es_budget, minres_solve, EsParams};
use crate::lbfgs::{two_loop_direction, PairBuffer};
use crate::linalg::{all_finite, dot, norm, sub};
use crate::linesearch::{armijo_backtracking, wolfe_search, LineSearchConfig, LineSearchMode};
use crate::operators::SymmetricOperator;
use crate::problems::StructuredObjective;
use crate::scaling::{
    bb_scalars, build_diagonal_seed, cautious_bounds, restrict_interval, trust_interval,
    BoundChoice, CautiousParams, SeedFormula,
};

/// Memory size meaning "keep every accepted pair".
pub const UNLIMITED_MEMORY: usize = usize::MAX;

/// How the diagonal part of the seed is refreshed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedMode {
    DiagonalDs,
    DiagonalDg,
    ScalarTauS,
    ScalarTauG,
    ScalarTauZ,
}

/// How linear systems with the seed matrix are solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeedSolver {
    /// Dense Cholesky factorisation of the seed.
    Exact,
    /// Jacobi-preconditioned MINRES with a fixed budget.
    Minres { max_iter: usize, rel_tol: f64 },
    /// MINRES with the budget chosen from the last objective change.
    MinresAdaptive { params: EsParams, rel_tol: f64 },
}

impl Default for SeedSolver {
    fn default() -> Self {
        Self::Minres {
            max_iter: 50,
            rel_tol: 1e-2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoseConfig {
    /// Number of stored pairs; [`UNLIMITED_MEMORY`] for no limit.
    pub memory: usize,
    /// Stop once `|grad J| <= eps`.
    pub eps: f64,
    pub cautious: CautiousParams,
    pub seed_mode: SeedMode,
    pub bound_choice: BoundChoice,
    pub line_search: LineSearchConfig,
    pub seed_solver: SeedSolver,
    pub max_outer: usize,
    /// Additionally stop when the relative change, step and gradient tests
    /// hold simultaneously.
    pub fair_stopping: bool,
    /// Initial diagonal seed `D_0 = tau_init I`.
    pub tau_init: f64,
    /// Keep iterates and seed diagonals in the records.
    pub keep_history: bool,
}

impl Default for RoseConfig {
    fn default() -> Self {
        Self {
            memory: 5,
            eps: 1e-6,
            cautious: CautiousParams::default(),
            seed_mode: SeedMode::DiagonalDg,
            bound_choice: BoundChoice::Full,
            line_search: LineSearchConfig::default(),
            seed_solver: SeedSolver::default(),
            max_outer: 5000,
            fair_stopping: false,
            tau_init: 1.0,
            keep_history: false,
        }
    }
}

impl RoseConfig {
    pub fn validate(&self) -> Result<()> {
        self.cautious.validate()?;
        self.line_search.validate()?;
        if !(self.eps >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "eps must be >= 0, got {}",
                self.eps
            )));
        }
        if !(self.tau_init > 0.0) || !self.tau_init.is_finite() {
            return Err(Error::InvalidInput(format!(
                "tau_init must be positive, got {}",
                self.tau_init
            )));
        }
        if let SeedSolver::MinresAdaptive { params, .. } = &self.seed_solver {
            params.validate()?;
        }
        Ok(())
    }
}

/// Telemetry for one outer iteration `k` (the step from `x_k` to `x_{k+1}`).
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    /// `J(x_{k+1})`
    pub value: f64,
    /// `|grad J(x_{k+1})|`
    pub grad_norm: f64,
    /// Accepted step length.
    pub alpha: f64,
    /// Objective evaluations spent in the line search.
    pub f_evals: usize,
    /// Inner solver iterations spent on the direction.
    pub inner_iterations: usize,
    /// Whether `(s_k, y_k)` passed the cautious test.
    pub pair_accepted: bool,
    /// Interval the diagonal seed `D_k` was projected into.
    pub seed_interval: (f64, f64),
    /// Cautious bounds `(omega_l, omega_u)` in force for `D_k`.
    pub cautious_bounds: (f64, f64),
    /// `x_k`, when history is kept.
    pub iterate: Option<Vec<f64>>,
    /// Diagonal of `D_k`, when history is kept.
    pub seed_diagonal: Option<Vec<f64>>,
    /// `grad J(x_k)' d_k`
    pub slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    GradientTol,
    FairTriple,
    MaxOuter,
    LineSearchFail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::GradientTol => "gradient_tol",
            Status::FairTriple => "fair_triple",
            Status::MaxOuter => "max_outer",
            Status::LineSearchFail => "line_search_fail",
        }
    }

    pub fn converged(&self) -> bool {
        matches!(self, Status::GradientTol | Status::FairTriple)
    }
}

impl std::str::FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gradient_tol" => Ok(Status::GradientTol),
            "fair_triple" => Ok(Status::FairTriple),
            "max_outer" => Ok(Status::MaxOuter),
            "line_search_fail" => Ok(Status::LineSearchFail),
            other => Err(Error::InvalidInput(format!("unknown status {other:?}"))),
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct RoseResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub grad_norm: f64,
    pub initial_value: f64,
    pub records: Vec<IterationRecord>,
    pub status: Status,
    /// Diagnostic for [`Status::LineSearchFail`].
    pub message: Option<String>,
}

impl RoseResult {
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    pub fn f_evals(&self) -> usize {
        self.records.iter().map(|r| r.f_evals).sum()
    }

    pub fn inner_iterations(&self) -> usize {
        self.records.iter().map(|r| r.inner_iterations).sum()
    }
}

/// Solves `B0 u = rhs` by dense Cholesky, falling back to LU if the seed is
/// not numerically positive definite.
fn dense_solve(op: &SymmetricOperator, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = op.dim();
    let dense = op.to_dense();
    let m = DMatrix::from_fn(n, n, |i, j| dense[i][j]);
    let b = DVector::from_column_slice(rhs);
    let sol = match m.clone().cholesky() {
        Some(ch) => ch.solve(&b),
        None => m
            .lu()
            .solve(&b)
            .ok_or_else(|| Error::Internal("singular seed matrix".into()))?,
    };
    Ok(sol.iter().copied().collect())
}

/// Minimises `problem` from `x0`.
pub fn rose_minimize<P>(problem: &P, x0: &[f64], cfg: &RoseConfig) -> Result<RoseResult>
where
    P: StructuredObjective + ?Sized,
{
    cfg.validate()?;
    let n = problem.dim();
    crate::error::check_dim(n, x0.len())?;
    if !all_finite(x0) {
        return Err(Error::NonFinite("starting point".into()));
    }

    let mut x = x0.to_vec();
    let (mut value, mut grad) = problem.value_and_gradient(&x);
    if !value.is_finite() || !all_finite(&grad) {
        return Err(Error::NonFinite("objective at starting point".into()));
    }
    let initial_value = value;
    let mut grad_norm = norm(&grad);

    let mut records = Vec::new();
    let finish = |x, value, grad_norm, records, status, message| RoseResult {
        x,
        value,
        grad_norm,
        initial_value,
        records,
        status,
        message,
    };

    if grad_norm <= cfg.eps {
        return Ok(finish(
            x,
            value,
            grad_norm,
            records,
            Status::GradientTol,
            None,
        ));
    }

    let mut pairs = PairBuffer::new(cfg.memory);
    let mut reg_hess = problem.regularizer_hessian(&x);
    let mut diag = vec![cfg.tau_init; n];
    let mut seed_interval = (cfg.tau_init, cfg.tau_init);
    let mut bounds = (cfg.tau_init, cfg.tau_init);
    let mut inner_budget = match cfg.seed_solver {
        SeedSolver::MinresAdaptive { params, .. } => es_budget(None, value, &params),
        SeedSolver::Minres { max_iter, .. } => max_iter,
        SeedSolver::Exact => 0,
    };

    for k in 0..cfg.max_outer {
        let seed = SymmetricOperator::sum(SymmetricOperator::Diagonal(diag.clone()), reg_hess)?;

        let mut inner_iterations = 0;
        let direction = two_loop_direction(&grad, &pairs, |rhs| match cfg.seed_solver {
            SeedSolver::Exact => dense_solve(&seed, rhs),
            SeedSolver::Minres { rel_tol, .. } | SeedSolver::MinresAdaptive { rel_tol, .. } => {
                let (u, report) =
                    minres_solve(&seed, rhs, &seed.diagonal_of(), inner_budget, rel_tol)?;
                inner_iterations += report.iterations;
                Ok(u)
            }
        })?;

        let slope = dot(&grad, &direction);
        let trial = |a: f64| -> Vec<f64> {
            x.iter()
                .zip(&direction)
                .map(|(xi, di)| xi + a * di)
                .collect()
        };
        let search = match cfg.line_search.mode {
            LineSearchMode::Armijo => {
                armijo_backtracking(|a| problem.value(&trial(a)), value, slope, &cfg.line_search)
            }
            LineSearchMode::WeakWolfe | LineSearchMode::StrongWolfe => wolfe_search(
                |a| {
                    let (v, g) = problem.value_and_gradient(&trial(a));
                    (v, dot(&g, &direction))
                },
                value,
                slope,
                &cfg.line_search,
            ),
        };
        let outcome = match search {
            Ok(o) => o,
            Err(e @ (Error::NotDescent { .. } | Error::LineSearchFailed { .. })) => {
                let msg = format!("iteration {k}: {e}");
                return Ok(finish(
                    x,
                    value,
                    grad_norm,
                    records,
                    Status::LineSearchFail,
                    Some(msg),
                ));
            }
            Err(e) => return Err(e),
        };

        let step: Vec<f64> = direction.iter().map(|d| outcome.alpha * d).collect();
        let x_next: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();
        let (value_next, grad_next) = problem.value_and_gradient(&x_next);
        if !value_next.is_finite() || !all_finite(&grad_next) {
            return Err(Error::NonFinite(format!("objective at iteration {k}")));
        }
        let y = sub(&grad_next, &grad);
        let accepted = pairs.maybe_store(&step, &y, cfg.cautious.c_s);
        let grad_norm_next = norm(&grad_next);

        records.push(IterationRecord {
            k,
            value: value_next,
            grad_norm: grad_norm_next,
            alpha: outcome.alpha,
            f_evals: outcome.evals,
            inner_iterations,
            pair_accepted: accepted,
            seed_interval,
            cautious_bounds: bounds,
            iterate: cfg.keep_history.then(|| x.clone()),
            seed_diagonal: cfg.keep_history.then(|| diag.clone()),
            slope,
        });

        let step_norm = norm(&step);
        let value_change = (value_next - value).abs();
        let value_prev = value;
        x = x_next;
        value = value_next;
        grad = grad_next;
        grad_norm = grad_norm_next;

        if grad_norm <= cfg.eps {
            return Ok(finish(
                x,
                value,
                grad_norm,
                records,
                Status::GradientTol,
                None,
            ));
        }
        if cfg.fair_stopping {
            let scale = 1.0 + initial_value.abs();
            if value_change <= 1e-5 * scale
                && step_norm <= 1e-3 * (1.0 + norm(&x))
                && grad_norm <= 1e-3 * scale
            {
                return Ok(finish(
                    x,
                    value,
                    grad_norm,
                    records,
                    Status::FairTriple,
                    None,
                ));
            }
        }

        reg_hess = problem.regularizer_hessian(&x);
        let mut z = y;
        {
            let mut s_step = vec![0.0; n];
            reg_hess.accumulate(&step, &mut s_step);
            for (zi, si) in z.iter_mut().zip(&s_step) {
                *zi -= si;
            }
        }
        bounds = cautious_bounds(grad_norm, &cfg.cautious);
        let bb = bb_scalars(&step, &z)?;
        let interval = trust_interval(&bb, bounds);
        let restricted = restrict_interval(&interval, cfg.bound_choice, &bb);
        diag = match cfg.seed_mode {
            SeedMode::DiagonalDs => {
                build_diagonal_seed(&step, &z, &restricted, SeedFormula::Ds, &diag)?
            }
            SeedMode::DiagonalDg => {
                build_diagonal_seed(&step, &z, &restricted, SeedFormula::Dg, &diag)?
            }
            SeedMode::ScalarTauS => vec![restricted.clamp(bb.tau_s); n],
            SeedMode::ScalarTauG => vec![restricted.clamp(bb.tau_g); n],
            SeedMode::ScalarTauZ => vec![restricted.clamp(bb.tau_z.unwrap_or(bb.tau_g)); n],
        };
        seed_interval = (restricted.lower, restricted.upper);

        if let SeedSolver::MinresAdaptive { params, .. } = cfg.seed_solver {
            inner_budget = es_budget(Some(value_prev), value, &params);
        }
    }

    Ok(finish(x, value, grad_norm, records, Status::MaxOuter, None))
}
