use proptest::prelude::*;

use structured_lbfgs::bench::io::{metric_table, read_results, write_results};
use structured_lbfgs::bench::profile::performance_profile;
use structured_lbfgs::bench::{
    method_config, run_grid, write_traces, CellResult, ExperimentGrid, MethodSpec, Metric,
    ProblemKind, ProblemSpec,
};
use structured_lbfgs::driver::{RoseConfig, SeedSolver, Status, UNLIMITED_MEMORY};

fn base() -> RoseConfig {
    RoseConfig {
        eps: 1e-13,
        seed_solver: SeedSolver::Exact,
        ..RoseConfig::default()
    }
}

fn quadratic(alpha: f64) -> ProblemSpec {
    ProblemSpec {
        name: "quadratic".into(),
        kind: ProblemKind::Quadratic {
            alpha,
            stencil_scale: 1.0,
        },
    }
}

#[test]
fn single_cell_half_norm() {
    let grid = ExperimentGrid {
        problems: vec![ProblemSpec {
            name: "half-norm".into(),
            kind: ProblemKind::HalfNorm { n: 8 },
        }],
        methods: vec![MethodSpec {
            name: "rose-dg-full".into(),
            config: base(),
        }],
        metric: Metric::Iterations,
        repeats: 1,
    };
    let run = run_grid(&grid).unwrap();
    assert_eq!(run.metric_matrix(Metric::Iterations), vec![vec![1.0]]);
}

#[test]
fn capped_cell_counts_as_unsolved() {
    let capped = RoseConfig {
        max_outer: 1,
        ..method_config("scalar-taug", &base()).unwrap()
    };
    let grid = ExperimentGrid {
        problems: vec![quadratic(1e-5)],
        methods: vec![
            MethodSpec {
                name: "scalar-taug".into(),
                config: capped,
            },
            MethodSpec {
                name: "rose-dg-full".into(),
                config: base(),
            },
        ],
        metric: Metric::Runtime,
        repeats: 3,
    };
    let run = run_grid(&grid).unwrap();
    let t = run.metric_matrix(Metric::Iterations);
    assert_eq!(t, vec![vec![f64::INFINITY, 2.0]]);
    assert_eq!(run.cells[0].status, Status::MaxOuter);
    let curves = performance_profile(&t, &["a".into(), "b".into()]).unwrap();
    assert_eq!(curves[0].rho_at(1e12), 0.0);
    assert_eq!(curves[1].rho_at(1.0), 1.0);
}

#[test]
fn full_quadratic_grid_and_profiles() {
    let mut methods = Vec::new();
    for name in [
        "rose-dg-full",
        "rose-dg-upperz",
        "rose-dg-bbband",
        "scalar-taug",
    ] {
        for memory in [0, 3, 5, 10, UNLIMITED_MEMORY] {
            let config = RoseConfig {
                memory,
                ..method_config(name, &base()).unwrap()
            };
            methods.push(MethodSpec {
                name: name.into(),
                config,
            });
        }
    }
    let grid = ExperimentGrid {
        problems: vec![quadratic(1e-5), quadratic(1e-3), quadratic(1e-1)],
        methods,
        metric: Metric::Iterations,
        repeats: 1,
    };
    let run = run_grid(&grid).unwrap();
    assert_eq!(run.cells.len(), 60);
    let (names, t) = metric_table(&run.cells, Metric::Iterations);
    assert_eq!(names.len(), 20);
    assert_eq!(t, run.metric_matrix(Metric::Iterations));
    for metric in [
        Metric::Runtime,
        Metric::Iterations,
        Metric::FEvals,
        Metric::InnerIterations,
    ] {
        let (names, t) = metric_table(&run.cells, metric);
        let curves = performance_profile(&t, &names).unwrap();
        let mut best_total = 0.0;
        for c in &curves {
            let rhos: Vec<f64> = c.points.iter().map(|p| p.1).collect();
            assert!(rhos.windows(2).all(|w| w[0] <= w[1]));
            assert!(rhos.iter().all(|r| (0.0..=1.0).contains(r)));
            best_total += c.rho_at(1.0);
        }
        assert!(best_total >= 1.0);
    }

    let dir = tempfile::tempdir().unwrap();
    write_traces(&run, dir.path()).unwrap();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 60);
}

#[test]
fn unknown_method_rejected() {
    assert!(method_config("rose-xx-full", &base()).is_err());
    assert!(method_config("rose-dg-wide", &base()).is_err());
    assert!(method_config("lbfgs", &base()).is_err());
}

fn status_strategy() -> impl Strategy<Value = Status> {
    prop_oneof![
        Just(Status::GradientTol),
        Just(Status::FairTriple),
        Just(Status::MaxOuter),
        Just(Status::LineSearchFail),
    ]
}

prop_compose! {
    fn cell_strategy()(
        problem in "[a-z][a-z0-9 ,\"-]{0,12}",
        method in "[a-z][a-z0-9-]{0,12}",
        alpha in any::<f64>().prop_filter("finite", |v| v.is_finite()),
        memory in prop::option::of(0usize..1_000_000),
        iterations in 0usize..100_000,
        f_evals in 0usize..100_000,
        inner in 0usize..10_000_000,
        runtime_ms in 0.0..1e7f64,
        final_grad_norm in prop_oneof![Just(f64::INFINITY), 0.0..1e10f64, 1e-300..1e-10f64],
        status in status_strategy(),
    ) -> CellResult {
        CellResult { problem, method, alpha, memory, iterations, f_evals,
            inner_iters_total: inner, runtime_ms, final_grad_norm, status }
    }
}

proptest! {
    #[test]
    fn results_csv_round_trip(cells in prop::collection::vec(cell_strategy(), 0..20)) {
        let mut buf = Vec::new();
        write_results(&mut buf, &cells).unwrap();
        prop_assert_eq!(read_results(buf.as_slice()).unwrap(), cells);
    }
}
