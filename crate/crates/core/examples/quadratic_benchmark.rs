//! Iteration counts on the 16-dimensional quadratic benchmark for every
//! regularization strength, memory size and seed variant.
//!
//! ```text
//! cargo run --release --example quadratic_benchmark
//! ```

use structured_lbfgs::driver::{rose_minimize, RoseConfig, SeedMode, SeedSolver, UNLIMITED_MEMORY};
use structured_lbfgs::problems::make_quadratic_benchmark;
use structured_lbfgs::scaling::BoundChoice;

fn main() {
    let alphas = [1e-5, 1e-3, 1e-1];
    let memories = [0, 3, 5, 10, UNLIMITED_MEMORY];
    let variants = [
        ("scalar tau_g", SeedMode::ScalarTauG, BoundChoice::Full),
        ("diag [wl, wu]", SeedMode::DiagonalDg, BoundChoice::Full),
        ("diag [wl, |tz|]", SeedMode::DiagonalDg, BoundChoice::UpperZ),
        (
            "diag [|ts|, |tz|]",
            SeedMode::DiagonalDg,
            BoundChoice::BbBand,
        ),
    ];

    print!("{:<20}", "seed / memory");
    for _ in alphas {
        for m in memories {
            let m = if m == UNLIMITED_MEMORY {
                "inf".to_string()
            } else {
                m.to_string()
            };
            print!("{m:>7}");
        }
        print!(" |");
    }
    println!();

    for (name, seed_mode, bound_choice) in variants {
        print!("{name:<20}");
        for alpha in alphas {
            let problem = make_quadratic_benchmark(alpha, 1.0).expect("valid alpha");
            for memory in memories {
                let cfg = RoseConfig {
                    memory,
                    eps: 1e-13,
                    seed_mode,
                    bound_choice,
                    seed_solver: SeedSolver::Exact,
                    ..RoseConfig::default()
                };
                let res = rose_minimize(&problem, &[0.0; 16], &cfg).expect("solver runs");
                print!("{:>7}", res.iterations());
            }
            print!(" |");
        }
        println!();
    }
    println!("columns grouped by alpha = 1e-5 | 1e-3 | 1e-1");
}
