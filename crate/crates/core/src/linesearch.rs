//! Step-size selection: Armijo backtracking and Wolfe-Powell searches.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineSearchMode {
    Armijo,
    WeakWolfe,
    StrongWolfe,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSearchConfig {
    /// Sufficient-decrease constant.
    pub sigma: f64,
    /// Backtracking factor.
    pub beta: f64,
    /// Curvature constant, `sigma < eta < 1`.
    pub eta: f64,
    pub mode: LineSearchMode,
    /// Trial budget for backtracking and for the Wolfe bracketing phase.
    pub max_trials: usize,
}

impl Default for LineSearchConfig {
    fn default() -> Self {
        Self {
            sigma: 1e-4,
            beta: 0.5,
            eta: 0.9,
            mode: LineSearchMode::Armijo,
            max_trials: 50,
        }
    }
}

impl LineSearchConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = 0.0 < self.sigma
            && self.sigma < self.eta
            && self.eta < 1.0
            && 0.0 < self.beta
            && self.beta < 1.0
            && self.max_trials >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "invalid line search config {self:?}"
            )))
        }
    }
}

/// Zoom budget of the Wolfe search.
pub const ZOOM_BUDGET: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSearchOutcome {
    pub alpha: f64,
    pub evals: usize,
    /// `phi(alpha)`
    pub value: f64,
}

fn check_slope(slope0: f64) -> Result<()> {
    if slope0 < 0.0 {
        Ok(())
    } else {
        Err(Error::NotDescent { slope: slope0 })
    }
}

/// Tries `1, beta, beta^2, ...` and returns the first step satisfying
/// `phi(a) <= phi0 + a sigma slope0`.
pub fn armijo_backtracking<F>(
    mut phi: F,
    phi0: f64,
    slope0: f64,
    cfg: &LineSearchConfig,
) -> Result<LineSearchOutcome>
where
    F: FnMut(f64) -> f64,
{
    check_slope(slope0)?;
    let mut alpha = 1.0;
    for evals in 1..=cfg.max_trials {
        let value = phi(alpha);
        if value <= phi0 + alpha * cfg.sigma * slope0 {
            return Ok(LineSearchOutcome {
                alpha,
                evals,
                value,
            });
        }
        alpha *= cfg.beta;
    }
    Err(Error::LineSearchFailed {
        evals: cfg.max_trials,
    })
}

/// Bracketing search for a step satisfying sufficient decrease and the weak
/// or strong curvature condition selected by `cfg.mode` (Armijo mode is
/// treated as weak Wolfe here). `phi` returns `(value, derivative)` along
/// the search direction. The first trial is `alpha = 1`.
pub fn wolfe_search<F>(
    mut phi: F,
    phi0: f64,
    slope0: f64,
    cfg: &LineSearchConfig,
) -> Result<LineSearchOutcome>
where
    F: FnMut(f64) -> (f64, f64),
{
    check_slope(slope0)?;
    let strong = cfg.mode == LineSearchMode::StrongWolfe;
    let armijo = |a: f64, v: f64| v <= phi0 + a * cfg.sigma * slope0;
    let curvature = |d: f64| {
        if strong {
            d.abs() <= cfg.eta * slope0.abs()
        } else {
            d >= cfg.eta * slope0
        }
    };

    let mut evals = 0;
    let (mut a_prev, mut v_prev, mut d_prev) = (0.0, phi0, slope0);
    let mut a = 1.0;

    let (mut lo, mut hi) = loop {
        if evals == cfg.max_trials {
            return Err(Error::LineSearchFailed { evals });
        }
        let (v, d) = phi(a);
        evals += 1;
        if !v.is_finite() || !armijo(a, v) || (evals > 1 && v >= v_prev) {
            break ((a_prev, v_prev, d_prev), (a, v, d));
        }
        if curvature(d) {
            return Ok(LineSearchOutcome {
                alpha: a,
                evals,
                value: v,
            });
        }
        if d >= 0.0 {
            break ((a, v, d), (a_prev, v_prev, d_prev));
        }
        (a_prev, v_prev, d_prev) = (a, v, d);
        a *= 2.0;
    };

    for _ in 0..ZOOM_BUDGET {
        let a = zoom_trial(lo, hi);
        let (v, d) = phi(a);
        evals += 1;
        if !v.is_finite() || !armijo(a, v) || v >= lo.1 {
            hi = (a, v, d);
            continue;
        }
        if curvature(d) {
            return Ok(LineSearchOutcome {
                alpha: a,
                evals,
                value: v,
            });
        }
        if d * (hi.0 - lo.0) >= 0.0 {
            hi = lo;
        }
        lo = (a, v, d);
    }
    Err(Error::LineSearchFailed { evals })
}

/// Minimiser of the quadratic through `lo` (value and slope) and `hi`
/// (value), safeguarded into the middle 80% of the bracket; bisection when
/// the model is unusable.
fn zoom_trial(lo: (f64, f64, f64), hi: (f64, f64, f64)) -> f64 {
    let (a0, v0, d0) = lo;
    let (a1, v1, _) = hi;
    let width = a1 - a0;
    let mid = 0.5 * (a0 + a1);
    if !v1.is_finite() {
        return mid;
    }
    let curv = (v1 - v0 - d0 * width) / (width * width);
    if !(curv > 0.0) {
        return mid;
    }
    let t = a0 - d0 / (2.0 * curv);
    let (left, right) = if a0 < a1 { (a0, a1) } else { (a1, a0) };
    let margin = 0.1 * (right - left);
    if t.is_finite() && t >= left + margin && t <= right - margin {
        t
    } else {
        mid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(c: f64, x: f64, d: f64) -> impl Fn(f64) -> (f64, f64) {
        move |a: f64| {
            let xa = x + a * d;
            (0.5 * c * xa * xa, c * xa * d)
        }
    }

    #[test]
    fn armijo_full_step() {
        let cfg = LineSearchConfig::default();
        let f = quad(1.0, 1.0, -1.0);
        let out = armijo_backtracking(|a| f(a).0, 0.5, -1.0, &cfg).unwrap();
        assert_eq!(out.alpha, 1.0);
        assert_eq!(out.evals, 1);
    }

    #[test]
    fn armijo_backtracks_to_power_of_half() {
        let cfg = LineSearchConfig {
            sigma: 0.5,
            beta: 0.5,
            ..LineSearchConfig::default()
        };
        let f = quad(100.0, 1.0, -100.0);
        let out = armijo_backtracking(|a| f(a).0, 50.0, -1e4, &cfg).unwrap();
        assert_eq!(out.alpha, 2f64.powi(-7));
        assert_eq!(out.evals, 8);
    }

    #[test]
    fn armijo_rejects_ascent() {
        let cfg = LineSearchConfig::default();
        assert!(matches!(
            armijo_backtracking(|_| 0.0, 0.0, 0.0, &cfg),
            Err(Error::NotDescent { .. })
        ));
    }

    #[test]
    fn armijo_budget_exhausted() {
        let cfg = LineSearchConfig {
            max_trials: 3,
            ..LineSearchConfig::default()
        };
        assert_eq!(
            armijo_backtracking(|_| 1.0, 0.0, -1.0, &cfg),
            Err(Error::LineSearchFailed { evals: 3 })
        );
    }

    #[test]
    fn wolfe_accepts_unit_step_on_exact_minimiser() {
        for mode in [LineSearchMode::WeakWolfe, LineSearchMode::StrongWolfe] {
            let cfg = LineSearchConfig {
                mode,
                ..LineSearchConfig::default()
            };
            let out = wolfe_search(quad(1.0, 1.0, -1.0), 0.5, -1.0, &cfg).unwrap();
            assert_eq!((out.alpha, out.evals), (1.0, 1));
            let out = wolfe_search(quad(4.0, 1.0, -1.0), 2.0, -4.0, &cfg).unwrap();
            assert_eq!(out.alpha, 1.0);
        }
    }

    #[test]
    fn wolfe_expands_short_direction() {
        let cfg = LineSearchConfig {
            mode: LineSearchMode::StrongWolfe,
            ..LineSearchConfig::default()
        };
        let f = quad(1.0, 1.0, -0.01);
        let out = wolfe_search(&f, 0.5, -0.01, &cfg).unwrap();
        let (v, d) = f(out.alpha);
        assert!(v <= 0.5 - 1e-4 * out.alpha * 0.01);
        assert!(d.abs() <= 0.9 * 0.01);
        assert!(out.alpha > 1.0);
    }

    #[test]
    fn wolfe_zooms_on_overshoot() {
        let cfg = LineSearchConfig {
            mode: LineSearchMode::StrongWolfe,
            eta: 0.1,
            ..LineSearchConfig::default()
        };
        let f = quad(100.0, 1.0, -100.0);
        let out = wolfe_search(&f, 50.0, -1e4, &cfg).unwrap();
        let (v, d) = f(out.alpha);
        assert!(v <= 50.0 - 1e-4 * out.alpha * 1e4);
        assert!(d.abs() <= 0.1 * 1e4);
    }

    #[test]
    fn wolfe_rejects_ascent() {
        let cfg = LineSearchConfig::default();
        assert!(wolfe_search(|_| (0.0, 0.0), 0.0, 1.0, &cfg).is_err());
    }
}
