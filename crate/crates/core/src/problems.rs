//! Structured objectives `J = D + S` and the bundled test problems.

use crate::error::{Error, Result};
use crate::linalg::{dot, sub};
use crate::operators::{five_point_laplacian, SymmetricOperator};

/// An objective split into a data term and a regularizer whose Hessian (or
/// a positive semi-definite approximation of it) is available as an
/// operator.
pub trait StructuredObjective {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    fn gradient(&self, x: &[f64]) -> Vec<f64>;

    fn value_and_gradient(&self, x: &[f64]) -> (f64, Vec<f64>) {
        (self.value(x), self.gradient(x))
    }

    /// Positive semi-definite regularizer Hessian approximation at `x`.
    fn regularizer_hessian(&self, x: &[f64]) -> SymmetricOperator;

    /// Dense Hessian of the full objective, when cheaply available. Used by
    /// test oracles.
    fn full_hessian(&self, _x: &[f64]) -> Option<Vec<Vec<f64>>> {
        None
    }
}

/// `J(x) = 0.5 (x - x*)' H (x - x*)` with `H = D + S` for a diagonal `D`
/// and an operator `S` reported as the regularizer Hessian.
#[derive(Debug, Clone)]
pub struct Quadratic {
    data_diag: Vec<f64>,
    regularizer: SymmetricOperator,
    hessian: SymmetricOperator,
    minimizer: Vec<f64>,
}

impl Quadratic {
    pub fn new(
        data_diag: Vec<f64>,
        regularizer: SymmetricOperator,
        minimizer: Vec<f64>,
    ) -> Result<Self> {
        let n = data_diag.len();
        if regularizer.dim() != n || minimizer.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if regularizer.dim() != n {
                    regularizer.dim()
                } else {
                    minimizer.len()
                },
            });
        }
        let hessian = SymmetricOperator::sum(
            SymmetricOperator::diagonal(data_diag.clone())?,
            regularizer.clone(),
        )?;
        Ok(Self {
            data_diag,
            regularizer,
            hessian,
            minimizer,
        })
    }

    /// `0.5 |x|^2` with no regularizer.
    pub fn half_norm_squared(dim: usize) -> Self {
        Self::new(
            vec![1.0; dim],
            SymmetricOperator::scaled_identity(0.0, dim),
            vec![0.0; dim],
        )
        .expect("dimensions agree")
    }

    pub fn data_diagonal(&self) -> &[f64] {
        &self.data_diag
    }

    pub fn minimizer(&self) -> &[f64] {
        &self.minimizer
    }

    /// The full Hessian `D + S`.
    pub fn hessian(&self) -> &SymmetricOperator {
        &self.hessian
    }
}

impl StructuredObjective for Quadratic {
    fn dim(&self) -> usize {
        self.data_diag.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let e = sub(x, &self.minimizer);
        let mut he = vec![0.0; e.len()];
        self.hessian.accumulate(&e, &mut he);
        0.5 * dot(&e, &he)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let e = sub(x, &self.minimizer);
        let mut g = vec![0.0; e.len()];
        self.hessian.accumulate(&e, &mut g);
        g
    }

    fn value_and_gradient(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let e = sub(x, &self.minimizer);
        let mut g = vec![0.0; e.len()];
        self.hessian.accumulate(&e, &mut g);
        (0.5 * dot(&e, &g), g)
    }

    fn regularizer_hessian(&self, _x: &[f64]) -> SymmetricOperator {
        self.regularizer.clone()
    }

    fn full_hessian(&self, _x: &[f64]) -> Option<Vec<Vec<f64>>> {
        Some(self.hessian.to_dense())
    }
}

/// Grid side of the quadratic benchmark Laplacian (16 unknowns).
pub const BENCHMARK_GRID_SIDE: usize = 4;

/// Exponent of the first data-term eigenvalue in the quadratic benchmark.
/// The data diagonal is `exp(-j)` for `j = first, ..., first + 15`.
pub const BENCHMARK_FIRST_EXPONENT: usize = 0;

/// The 16-dimensional ill-conditioned quadratic benchmark:
/// `D = diag(exp(-j))`, `S = alpha * L` with `L` the five-point Laplacian on
/// a 4x4 grid, minimizer `(1, ..., 1)`.
pub fn make_quadratic_benchmark(alpha: f64, stencil_scale: f64) -> Result<Quadratic> {
    make_quadratic_benchmark_with_offset(alpha, stencil_scale, BENCHMARK_FIRST_EXPONENT)
}

/// [`make_quadratic_benchmark`] with the data diagonal starting at
/// `exp(-first_exponent)`.
pub fn make_quadratic_benchmark_with_offset(
    alpha: f64,
    stencil_scale: f64,
    first_exponent: usize,
) -> Result<Quadratic> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidInput(format!(
            "alpha must be >= 0, got {alpha}"
        )));
    }
    let n = BENCHMARK_GRID_SIDE * BENCHMARK_GRID_SIDE;
    let data_diag = (0..n)
        .map(|j| (-((j + first_exponent) as f64)).exp())
        .collect();
    let reg = five_point_laplacian(BENCHMARK_GRID_SIDE, alpha * stencil_scale)?;
    Quadratic::new(data_diag, reg, vec![1.0; n])
}

/// Non-convex toy problem
/// `J(x) = sum_i w_i (1 - cos x_i) + (alpha / 2) x' L x`
/// with `w_i = 1 + i / n` and `L` the five-point Laplacian on a
/// `sqrt(n) x sqrt(n)` grid. The global minimizer is `x = 0`.
#[derive(Debug, Clone)]
pub struct ToyNonconvex {
    weights: Vec<f64>,
    alpha: f64,
    regularizer: SymmetricOperator,
}

pub fn make_toy_nonconvex(n: usize, alpha: f64) -> Result<ToyNonconvex> {
    let side = (n as f64).sqrt().round() as usize;
    if n == 0 || side * side != n {
        return Err(Error::InvalidInput(format!(
            "{n} is not a positive perfect square"
        )));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidInput(format!(
            "alpha must be > 0, got {alpha}"
        )));
    }
    Ok(ToyNonconvex {
        weights: (0..n).map(|i| 1.0 + i as f64 / n as f64).collect(),
        alpha,
        regularizer: five_point_laplacian(side, alpha)?,
    })
}

impl ToyNonconvex {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl StructuredObjective for ToyNonconvex {
    fn dim(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let data: f64 = self
            .weights
            .iter()
            .zip(x)
            .map(|(w, xi)| w * (1.0 - xi.cos()))
            .sum();
        let mut sx = vec![0.0; x.len()];
        self.regularizer.accumulate(x, &mut sx);
        data + 0.5 * dot(x, &sx)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; x.len()];
        self.regularizer.accumulate(x, &mut g);
        for ((gi, w), xi) in g.iter_mut().zip(&self.weights).zip(x) {
            *gi += w * xi.sin();
        }
        g
    }

    fn regularizer_hessian(&self, _x: &[f64]) -> SymmetricOperator {
        self.regularizer.clone()
    }

    fn full_hessian(&self, x: &[f64]) -> Option<Vec<Vec<f64>>> {
        let mut h = self.regularizer.to_dense();
        for (i, (w, xi)) in self.weights.iter().zip(x).enumerate() {
            h[i][i] += w * xi.cos();
        }
        Some(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn benchmark_minimizer() {
        let q = make_quadratic_benchmark(1e-3, 1.0).unwrap();
        let xs = vec![1.0; 16];
        assert_eq!(q.value(&xs), 0.0);
        assert!(q.gradient(&xs).iter().all(|&g| g == 0.0));
    }

    #[test]
    fn benchmark_gradient_without_regularizer() {
        let q = make_quadratic_benchmark(0.0, 1.0).unwrap();
        let g = q.gradient(&[0.0; 16]);
        for (j, gj) in g.iter().enumerate() {
            assert_eq!(*gj, -(-(j as f64)).exp());
        }
    }

    #[test]
    fn benchmark_conditioning() {
        let q = make_quadratic_benchmark(1e-5, 1.0).unwrap();
        let d = q.data_diagonal();
        let max = d.iter().cloned().fold(f64::MIN, f64::max);
        let min = d.iter().cloned().fold(f64::MAX, f64::min);
        assert!((max / min / 15f64.exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_based_offset() {
        let q = make_quadratic_benchmark_with_offset(0.0, 1.0, 1).unwrap();
        assert_eq!(q.data_diagonal()[0], (-1f64).exp());
        assert_eq!(q.data_diagonal()[15], (-16f64).exp());
    }

    #[test]
    fn benchmark_rejects_negative_alpha() {
        assert!(make_quadratic_benchmark(-1.0, 1.0).is_err());
    }

    #[test]
    fn toy_gradient_at_data_minimizer() {
        let p = make_toy_nonconvex(16, 0.5).unwrap();
        let x = vec![0.0; 16];
        assert!(p.gradient(&x).iter().all(|&g| g == 0.0));
        assert_eq!(p.value(&x), 0.0);
    }

    #[test]
    fn toy_requires_square() {
        assert!(make_toy_nonconvex(15, 1.0).is_err());
        assert!(make_toy_nonconvex(16, 0.0).is_err());
        assert_eq!(make_toy_nonconvex(64, 1e-2).unwrap().dim(), 64);
    }

    #[test]
    fn half_norm() {
        let q = Quadratic::half_norm_squared(2);
        assert_eq!(q.value(&[1.0, 1.0]), 1.0);
        assert_eq!(q.gradient(&[1.0, -2.0]), vec![1.0, -2.0]);
    }
}
