//! Plugging in your own objective: a regularized logistic regression whose
//! regularizer Hessian is a scaled graph Laplacian, minimised with a strong
//! Wolfe line search.
//!
//! ```text
//! cargo run --release --example custom_objective
//! ```

use structured_lbfgs::driver::{rose_minimize, RoseConfig, SeedSolver};
use structured_lbfgs::linesearch::{LineSearchConfig, LineSearchMode};
use structured_lbfgs::operators::{five_point_laplacian, SymmetricOperator};
use structured_lbfgs::problems::StructuredObjective;

/// `sum_i log(1 + exp(-b_i a_i' x)) + (lambda / 2) x' L x` on an image-shaped
/// weight vector.
struct SmoothLogistic {
    features: Vec<Vec<f64>>,
    labels: Vec<f64>,
    laplacian: SymmetricOperator,
}

impl SmoothLogistic {
    fn margins(&self, x: &[f64]) -> Vec<f64> {
        self.features
            .iter()
            .zip(&self.labels)
            .map(|(a, b)| b * a.iter().zip(x).map(|(u, v)| u * v).sum::<f64>())
            .collect()
    }
}

impl StructuredObjective for SmoothLogistic {
    fn dim(&self) -> usize {
        self.laplacian.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let data: f64 = self.margins(x).iter().map(|m| (-m).exp().ln_1p()).sum();
        let lx = self.laplacian.apply(x).unwrap();
        data + 0.5 * x.iter().zip(&lx).map(|(u, v)| u * v).sum::<f64>()
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = self.laplacian.apply(x).unwrap();
        for ((a, b), m) in self.features.iter().zip(&self.labels).zip(self.margins(x)) {
            let w = -b / (1.0 + m.exp());
            for (gi, ai) in g.iter_mut().zip(a) {
                *gi += w * ai;
            }
        }
        g
    }

    fn regularizer_hessian(&self, _x: &[f64]) -> SymmetricOperator {
        self.laplacian.clone()
    }
}

fn main() {
    let side = 6;
    let n = side * side;
    // deterministic pseudo-data: features from a cheap hash, labels from a
    // smooth ground-truth weight image
    let truth: Vec<f64> = (0..n)
        .map(|k| ((k / side) as f64 * 0.6).sin() + ((k % side) as f64 * 0.4).cos())
        .collect();
    let features: Vec<Vec<f64>> = (0..200)
        .map(|i| {
            (0..n)
                .map(|j| (((i * 31 + j * 17) % 23) as f64 / 11.0) - 1.0)
                .collect()
        })
        .collect();
    let labels = features
        .iter()
        .map(|a| {
            if a.iter().zip(&truth).map(|(u, v)| u * v).sum::<f64>() >= 0.0 {
                1.0
            } else {
                -1.0
            }
        })
        .collect();
    let problem = SmoothLogistic {
        features,
        labels,
        laplacian: five_point_laplacian(side, 0.5).unwrap(),
    };

    for mode in [LineSearchMode::Armijo, LineSearchMode::StrongWolfe] {
        let cfg = RoseConfig {
            eps: 1e-6,
            seed_solver: SeedSolver::Exact,
            line_search: LineSearchConfig {
                mode,
                ..LineSearchConfig::default()
            },
            ..RoseConfig::default()
        };
        let res = rose_minimize(&problem, &vec![0.0; n], &cfg).expect("solver runs");
        println!(
            "{mode:?}: J = {:.6}, |grad| = {:.2e}, {} iterations, {} evaluations, {}",
            res.value,
            res.grad_norm,
            res.iterations(),
            res.f_evals(),
            res.status
        );
    }
}
