//! Runs a small grid of methods on the quadratic benchmark and prints the
//! performance profiles for iteration counts.
//!
//! ```text
//! cargo run --release --example performance_profile
//! ```

use structured_lbfgs::bench::io::write_profile;
use structured_lbfgs::bench::profile::performance_profile;
use structured_lbfgs::bench::{
    method_config, run_grid, ExperimentGrid, MethodSpec, Metric, ProblemKind, ProblemSpec,
};
use structured_lbfgs::driver::{RoseConfig, SeedSolver};

fn main() {
    let base = RoseConfig {
        eps: 1e-10,
        seed_solver: SeedSolver::Exact,
        ..RoseConfig::default()
    };
    let problems = [1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0]
        .into_iter()
        .map(|alpha| ProblemSpec {
            name: "quadratic".into(),
            kind: ProblemKind::Quadratic {
                alpha,
                stencil_scale: 1.0,
            },
        })
        .collect();
    let methods = [
        "rose-dg-full",
        "rose-dg-upperz",
        "rose-ds-bbband",
        "scalar-taug",
        "scalar-taus",
    ]
    .into_iter()
    .map(|name| MethodSpec {
        name: name.into(),
        config: method_config(name, &base).unwrap(),
    })
    .collect();
    let grid = ExperimentGrid {
        problems,
        methods,
        metric: Metric::Iterations,
        repeats: 1,
    };

    let run = run_grid(&grid).expect("non-empty grid");
    let names: Vec<String> = grid.methods.iter().map(|m| m.name.clone()).collect();
    let t = run.metric_matrix(Metric::Iterations);
    for (p, row) in grid.problems.iter().zip(&t) {
        println!("alpha = {:<6} {row:?}", p.kind.alpha());
    }

    let curves = performance_profile(&t, &names).expect("some problem solved");
    println!();
    for tau in [1.0, 2.0, 10.0, 100.0] {
        let row: Vec<String> = curves
            .iter()
            .map(|c| format!("{}={:.2}", c.method, c.rho_at(tau)))
            .collect();
        println!("tau = {tau:<5} {}", row.join("  "));
    }

    println!();
    write_profile(std::io::stdout(), &curves).unwrap();
}
