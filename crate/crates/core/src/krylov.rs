//! Jacobi-preconditioned MINRES for seed systems and the adaptive inner
//! iteration budget.
//!
//! The preconditioner is applied symmetrically: with `P = diag(d)^{-1/2}`
//! the solver runs plain MINRES on `P A P w = P b` and returns `u = P w`.
//! Convergence is declared on the residual of that scaled system.

use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, norm};
use crate::operators::SymmetricOperator;

/// Jacobi entries at or below this are replaced by one.
pub const PRECONDITIONER_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub iterations: usize,
    /// `|rhs - A u| / |rhs|` recomputed at exit.
    pub relative_residual: f64,
    /// Relative residual of the preconditioned system at exit.
    pub preconditioned_residual: f64,
    /// `preconditioned_residual <= rel_tol`.
    pub converged: bool,
    /// The Lanczos process stalled before reaching the tolerance.
    pub breakdown: bool,
    /// Preconditioned relative residual after each iteration, starting with
    /// the initial value 1.
    pub residual_history: Vec<f64>,
}

/// Solves `op u = rhs` approximately.
///
/// Stops after `max_iter` iterations or once the preconditioned relative
/// residual drops to `rel_tol`. A zero right-hand side returns `u = 0`.
pub fn minres_solve(
    op: &SymmetricOperator,
    rhs: &[f64],
    precond_diag: &[f64],
    max_iter: usize,
    rel_tol: f64,
) -> Result<(Vec<f64>, SolveReport)> {
    let n = op.dim();
    check_dim(n, rhs.len())?;
    check_dim(n, precond_diag.len())?;
    if let Some(i) = precond_diag.iter().position(|d| d.is_nan() || *d < 0.0) {
        return Err(Error::InvalidInput(format!(
            "preconditioner entry {i} is {}",
            precond_diag[i]
        )));
    }

    let scale: Vec<f64> = precond_diag
        .iter()
        .map(|&d| {
            if d > PRECONDITIONER_FLOOR {
                1.0 / d.sqrt()
            } else {
                1.0
            }
        })
        .collect();

    let rhs_norm = norm(rhs);
    if rhs_norm == 0.0 {
        return Ok((
            vec![0.0; n],
            SolveReport {
                iterations: 0,
                relative_residual: 0.0,
                preconditioned_residual: 0.0,
                converged: true,
                breakdown: false,
                residual_history: vec![0.0],
            },
        ));
    }

    // scaled operator w -> P A P w
    let mut tmp = vec![0.0; n];
    let mut scaled_apply = |w: &[f64], out: &mut [f64]| {
        for ((t, wi), si) in tmp.iter_mut().zip(w).zip(&scale) {
            *t = wi * si;
        }
        out.iter_mut().for_each(|o| *o = 0.0);
        op.accumulate(&tmp, out);
        for (o, si) in out.iter_mut().zip(&scale) {
            *o *= si;
        }
    };

    let b: Vec<f64> = rhs.iter().zip(&scale).map(|(r, s)| r * s).collect();
    let beta1 = norm(&b);

    let mut w_sol = vec![0.0; n];
    let mut v_prev = vec![0.0; n];
    let mut v: Vec<f64> = b.iter().map(|x| x / beta1).collect();
    let mut av = vec![0.0; n];
    let mut dir_prev2 = vec![0.0; n];
    let mut dir_prev = vec![0.0; n];

    let mut beta = beta1;
    let mut phibar = beta1;
    // Givens rotations from the two previous steps
    let (mut c_km1, mut s_km1, mut c_km2, mut s_km2) = (1.0f64, 0.0f64, 1.0f64, 0.0f64);

    let mut history = vec![1.0];
    let mut iterations = 0;
    let mut breakdown = false;
    let mut rel = 1.0;

    while iterations < max_iter && rel > rel_tol {
        iterations += 1;

        // Lanczos step
        scaled_apply(&v, &mut av);
        let alpha = dot(&v, &av);
        let mut v_next: Vec<f64> = av
            .iter()
            .zip(&v)
            .zip(&v_prev)
            .map(|((a, vi), vp)| a - alpha * vi - beta * vp)
            .collect();
        let beta_next = norm(&v_next);

        // apply previous rotations to the new column (beta, alpha, beta_next)
        let eps = s_km2 * beta;
        let delta_tmp = c_km2 * beta;
        let delta = c_km1 * delta_tmp + s_km1 * alpha;
        let gamma_bar = -s_km1 * delta_tmp + c_km1 * alpha;

        let gamma = gamma_bar.hypot(beta_next);
        if gamma == 0.0 {
            breakdown = true;
            break;
        }
        let c = gamma_bar / gamma;
        let s = beta_next / gamma;
        let phi = c * phibar;
        phibar *= -s;

        let dir: Vec<f64> = v
            .iter()
            .zip(&dir_prev)
            .zip(&dir_prev2)
            .map(|((vi, d1), d2)| (vi - delta * d1 - eps * d2) / gamma)
            .collect();
        for (x, d) in w_sol.iter_mut().zip(&dir) {
            *x += phi * d;
        }

        rel = phibar.abs() / beta1;
        history.push(rel);

        c_km2 = c_km1;
        s_km2 = s_km1;
        c_km1 = c;
        s_km1 = s;

        dir_prev2 = std::mem::replace(&mut dir_prev, dir);

        if rel <= rel_tol {
            break;
        }
        if beta_next <= 1e-14 * (alpha.abs() + beta) {
            breakdown = true;
            break;
        }
        for x in &mut v_next {
            *x /= beta_next;
        }
        v_prev = std::mem::replace(&mut v, v_next);
        beta = beta_next;
    }

    let u: Vec<f64> = w_sol.iter().zip(&scale).map(|(w, s)| w * s).collect();
    let au = op.apply(&u)?;
    let true_rel = norm(&crate::linalg::sub(rhs, &au)) / rhs_norm;
    let converged = rel <= rel_tol;

    Ok((
        u,
        SolveReport {
            iterations,
            relative_residual: true_rel,
            preconditioned_residual: rel,
            converged,
            breakdown: breakdown && !converged,
            residual_history: history,
        },
    ))
}

/// Parameters of the adaptive inner budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsParams {
    pub eps0: f64,
    pub eps1: f64,
    pub eta0: usize,
    pub eta1: usize,
    pub eta2: usize,
}

impl Default for EsParams {
    fn default() -> Self {
        Self {
            eps0: 1e-3,
            eps1: 1e-4,
            eta0: 10,
            eta1: 30,
            eta2: 50,
        }
    }
}

impl EsParams {
    pub fn validate(&self) -> Result<()> {
        let ok = 0.0 < self.eps1
            && self.eps1 < self.eps0
            && self.eps0 < 1.0
            && 0 < self.eta0
            && self.eta0 < self.eta1
            && self.eta1 < self.eta2;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "invalid early-stopping parameters {self:?}"
            )))
        }
    }
}

/// Inner iteration budget from the last change in objective value: small
/// progress buys more iterations. Without a previous value the budget is
/// `eta0`.
pub fn es_budget(prev_value: Option<f64>, curr_value: f64, p: &EsParams) -> usize {
    let Some(prev) = prev_value else {
        return p.eta0;
    };
    let change = (curr_value - prev).abs();
    if change <= p.eps1 * prev.abs() {
        p.eta2
    } else if change <= p.eps0 * prev.abs() {
        p.eta1
    } else {
        p.eta0
    }
}
