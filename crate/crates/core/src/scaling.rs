//! Seed scaling: Barzilai-Borwein scalars, the cautious trust interval and
//! the diagonal part of the seed matrix.
//!
//! Given the step `s` and the structured secant vector `z = y - S s`, the
//! diagonal seed `D` is chosen to fit `D s ~ z` coordinate by coordinate, with
//! every entry projected into an interval whose bounds depend on the current
//! gradient norm.

use crate::error::{check_dim, Error, Result};
use crate::linalg::dot;

/// Constants of the cautious safeguards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CautiousParams {
    /// Pair admission threshold: store `(s, y)` only if `y's > c_s |s|^2`.
    pub c_s: f64,
    /// Fixed part of the lower bound.
    pub c0: f64,
    /// Fixed part of the upper bound, may be `f64::INFINITY`.
    pub c0_upper: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Default for CautiousParams {
    fn default() -> Self {
        Self {
            c_s: 1e-9,
            c0: 1e-6,
            c0_upper: 1e6,
            c1: 1e-6,
            c2: 1.0,
        }
    }
}

impl CautiousParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.c_s > 0.0
            && self.c0 >= 0.0
            && self.c0_upper >= self.c0
            && self.c1 > 0.0
            && self.c2 > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "invalid cautious parameters {self:?}"
            )))
        }
    }
}

/// Barzilai-Borwein type scalar fits of `s` to `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BbScalars {
    /// `z's / |s|^2`
    pub tau_s: f64,
    /// `|z| / |s|`
    pub tau_g: f64,
    /// `|z|^2 / z's`, absent when `z's = 0`.
    pub tau_z: Option<f64>,
    /// `z's`
    pub rho: f64,
}

pub fn bb_scalars(s: &[f64], z: &[f64]) -> Result<BbScalars> {
    check_dim(s.len(), z.len())?;
    let ss = dot(s, s);
    if ss == 0.0 {
        return Err(Error::InvalidInput("step s must be non-zero".into()));
    }
    let rho = dot(z, s);
    let zz = dot(z, z);
    Ok(BbScalars {
        tau_s: rho / ss,
        tau_g: zz.sqrt() / ss.sqrt(),
        tau_z: (rho != 0.0).then(|| zz / rho),
        rho,
    })
}

/// `(omega_l, omega_u)` for the given gradient norm. A zero gradient yields
/// `(0, inf)`.
pub fn cautious_bounds(grad_norm: f64, params: &CautiousParams) -> (f64, f64) {
    let t = params.c1 * grad_norm.powf(params.c2);
    let lower = params.c0.min(t);
    let upper = params.c0_upper.max(1.0 / t);
    (lower, upper)
}

/// Closed interval `[lower, upper]` used to project seed coefficients, along
/// with the cautious bounds it was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrustInterval {
    pub lower: f64,
    pub upper: f64,
    pub omega_l: f64,
    pub omega_u: f64,
}

impl TrustInterval {
    /// The whole real line. Only meaningful for unconstrained fits.
    pub fn unbounded() -> Self {
        Self {
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
            omega_l: f64::NEG_INFINITY,
            omega_u: f64::INFINITY,
        }
    }

    /// `[lower, upper]` with the cautious bounds set to the same endpoints.
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower <= upper) {
            return Err(Error::InvalidInput(format!(
                "empty interval [{lower}, {upper}]"
            )));
        }
        Ok(Self {
            lower,
            upper,
            omega_l: lower,
            omega_u: upper,
        })
    }

    pub fn singleton(value: f64, omega_l: f64, omega_u: f64) -> Self {
        Self {
            lower: value,
            upper: value,
            omega_l,
            omega_u,
        }
    }

    /// Projection onto the interval.
    pub fn clamp(&self, t: f64) -> f64 {
        self.upper.min(self.lower.max(t))
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lower <= t && t <= self.upper
    }
}

/// Builds `T = [omega_l, omega_u]` if `rho > 0`, otherwise
/// `[omega_l, P(tau_g)]` with `P` the projection onto `[omega_l, omega_u]`.
pub fn trust_interval(bb: &BbScalars, bounds: (f64, f64)) -> TrustInterval {
    let (omega_l, omega_u) = bounds;
    let upper = if bb.rho > 0.0 {
        omega_u
    } else {
        omega_u.min(omega_l.max(bb.tau_g))
    };
    TrustInterval {
        lower: omega_l,
        upper,
        omega_l,
        omega_u,
    }
}

/// How the diagonal coefficients are computed from `z_j / s_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedFormula {
    /// Plain ratio; minimises `|D s - z|`.
    Ds,
    /// Absolute ratio; minimises `|D^{1/2} s - D^{-1/2} z|`.
    Dg,
}

/// Which extra bounds `[a, b]` are intersected with `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundChoice {
    /// `[omega_l, omega_u]`, i.e. `T` itself.
    Full,
    /// `[omega_l, min(|tau_z|, omega_u)]`
    UpperZ,
    /// `[max(|tau_s|, omega_l), min(|tau_z|, omega_u)]`
    BbBand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagonalSeedVariant {
    pub formula: SeedFormula,
    pub bounds: BoundChoice,
}

/// Intersects `interval` with the bounds selected by `choice`.
///
/// When `tau_z` is undefined the upper bound falls back to `omega_u`. An empty
/// intersection collapses to the endpoint of `interval` nearest to it.
pub fn restrict_interval(
    interval: &TrustInterval,
    choice: BoundChoice,
    bb: &BbScalars,
) -> TrustInterval {
    let tz_upper = bb
        .tau_z
        .map_or(interval.omega_u, |t| t.abs().min(interval.omega_u));
    let (a, b) = match choice {
        BoundChoice::Full => return *interval,
        BoundChoice::UpperZ => (interval.omega_l, tz_upper),
        BoundChoice::BbBand => (bb.tau_s.abs().max(interval.omega_l), tz_upper),
    };
    let lower = a.max(interval.lower);
    let upper = b.min(interval.upper);
    if lower <= upper {
        return TrustInterval {
            lower,
            upper,
            ..*interval
        };
    }
    let point = if a > interval.upper {
        interval.upper
    } else {
        interval.lower
    };
    TrustInterval::singleton(point, interval.omega_l, interval.omega_u)
}

/// Diagonal seed coefficients fitted to `D s ~ z` and projected into `t_hat`.
///
/// Coordinates with `s_j = 0` carry `prev_diag[j]` forward, projected as well.
pub fn build_diagonal_seed(
    s: &[f64],
    z: &[f64],
    t_hat: &TrustInterval,
    formula: SeedFormula,
    prev_diag: &[f64],
) -> Result<Vec<f64>> {
    check_dim(s.len(), z.len())?;
    check_dim(s.len(), prev_diag.len())?;
    Ok(s.iter()
        .zip(z)
        .zip(prev_diag)
        .map(|((&sj, &zj), &prev)| {
            if sj == 0.0 {
                return t_hat.clamp(prev);
            }
            let ratio = zj / sj;
            match formula {
                SeedFormula::Ds => t_hat.clamp(ratio),
                SeedFormula::Dg => t_hat.clamp(ratio.abs()),
            }
        })
        .collect())
}
