//! Solving with the seed matrix `D + S` by Jacobi-scaled MINRES, and what
//! the inner budget does to the outer iteration count.
//!
//! ```text
//! cargo run --release --example minres_seed_solve
//! ```

use structured_lbfgs::driver::{rose_minimize, RoseConfig, SeedSolver};
use structured_lbfgs::krylov::{minres_solve, EsParams};
use structured_lbfgs::operators::SymmetricOperator;
use structured_lbfgs::problems::{make_quadratic_benchmark, StructuredObjective};

fn main() {
    let q = make_quadratic_benchmark(1e-3, 1.0).expect("valid alpha");
    let rhs: Vec<f64> = (0..16).map(|i| 1.0 + (i as f64).cos()).collect();

    let op = q.hessian();
    for (label, precond) in [("no scaling", vec![1.0; 16]), ("Jacobi", op.diagonal_of())] {
        let (_, report) = minres_solve(op, &rhs, &precond, 100, 1e-10).expect("SPD system");
        println!(
            "{label:<11} {:>3} iterations, relative residual {:.2e}",
            report.iterations, report.relative_residual
        );
    }

    // an identity seed plus the Laplacian, as on the first outer iteration
    let seed = SymmetricOperator::sum(SymmetricOperator::identity(16), q.regularizer_hessian(&[]))
        .unwrap();
    let (_, report) = minres_solve(&seed, &rhs, &seed.diagonal_of(), 10, 1e-2).unwrap();
    println!("first seed: {} iterations to 1e-2", report.iterations);

    println!("\nouter iterations on alpha = 1e-3:");
    let solvers = [
        ("exact", SeedSolver::Exact),
        (
            "MINRES x5",
            SeedSolver::Minres {
                max_iter: 5,
                rel_tol: 1e-2,
            },
        ),
        (
            "MINRES x50",
            SeedSolver::Minres {
                max_iter: 50,
                rel_tol: 1e-2,
            },
        ),
        (
            "adaptive",
            SeedSolver::MinresAdaptive {
                params: EsParams::default(),
                rel_tol: 1e-2,
            },
        ),
    ];
    for (label, seed_solver) in solvers {
        let cfg = RoseConfig {
            eps: 1e-10,
            seed_solver,
            ..RoseConfig::default()
        };
        let res = rose_minimize(&q, &[0.0; 16], &cfg).expect("solver runs");
        println!(
            "{label:<11} {:>4} outer, {:>5} inner, status {}",
            res.iterations(),
            res.inner_iterations(),
            res.status
        );
    }
}
