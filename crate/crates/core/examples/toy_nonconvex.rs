//! Non-convex problem solved with inexact MINRES seed solves and the
//! adaptive inner budget.
//!
//! ```text
//! cargo run --release --example toy_nonconvex
//! ```

use structured_lbfgs::bench::toy_start;
use structured_lbfgs::driver::{rose_minimize, RoseConfig, SeedMode, SeedSolver};
use structured_lbfgs::krylov::EsParams;
use structured_lbfgs::problems::{make_toy_nonconvex, StructuredObjective};

fn main() {
    let problem = make_toy_nonconvex(64, 1e-2).expect("64 is a square");
    // starts well outside the convex region of most cosine terms
    let x0 = toy_start(problem.dim());

    let cfg = RoseConfig {
        memory: 5,
        eps: 1e-6,
        seed_mode: SeedMode::DiagonalDg,
        seed_solver: SeedSolver::MinresAdaptive {
            params: EsParams::default(),
            rel_tol: 1e-2,
        },
        max_outer: 500,
        ..RoseConfig::default()
    };
    let res = rose_minimize(&problem, &x0, &cfg).expect("solver runs");

    println!(
        "{:>5} {:>14} {:>12} {:>8} {:>6} {:>6}",
        "k", "J", "|grad|", "alpha", "inner", "pair"
    );
    for r in &res.records {
        println!(
            "{:>5} {:>14.6e} {:>12.4e} {:>8.3} {:>6} {:>6}",
            r.k, r.value, r.grad_norm, r.alpha, r.inner_iterations, r.pair_accepted
        );
    }
    println!(
        "status {} after {} iterations, {} MINRES iterations in total",
        res.status,
        res.iterations(),
        res.inner_iterations()
    );
}
