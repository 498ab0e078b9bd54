//! Structured limited-memory BFGS for objectives of the form
//! `J(x) = D(x) + S(x)`.
//!
//! The seed matrix of the two-loop recursion is `B0 = D_k + S_k`, where
//! `S_k` is a cheap positive semi-definite approximation of the
//! regularizer Hessian supplied by the problem and `D_k` is a diagonal
//! operator fitted to the structured secant equation `D_k s = y - S_k s`.
//! Both the stored correction pairs and the spectrum of `D_k` are guarded
//! by cautious updates tied to the gradient norm, which keeps the method
//! globally convergent without convexity.
//!
//! Seed systems are solved either exactly (small problems) or with
//! Jacobi-preconditioned MINRES under a fixed or adaptive iteration budget.
//!
//! ```
//! use structured_lbfgs::driver::{rose_minimize, RoseConfig, SeedSolver, Status};
//! use structured_lbfgs::problems::make_quadratic_benchmark;
//!
//! let problem = make_quadratic_benchmark(1e-3, 1.0).unwrap();
//! let cfg = RoseConfig {
//!     memory: 0,
//!     eps: 1e-13,
//!     seed_solver: SeedSolver::Exact,
//!     ..RoseConfig::default()
//! };
//! let result = rose_minimize(&problem, &[0.0; 16], &cfg).unwrap();
//! assert_eq!(result.status, Status::GradientTol);
//! assert_eq!(result.iterations(), 2);
//! ```

// `!(a > b)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod driver;
pub mod error;
pub mod krylov;
pub mod lbfgs;
mod linalg;
pub mod linesearch;
pub mod operators;
pub mod problems;
pub mod scaling;

pub use driver::{
    rose_minimize, IterationRecord, RoseConfig, RoseResult, SeedMode, SeedSolver, Status,
};
pub use error::{Error, Result};
pub use operators::SymmetricOperator;
pub use problems::StructuredObjective;
