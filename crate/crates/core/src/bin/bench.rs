use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use structured_lbfgs::bench::config_file::expand_args;
use structured_lbfgs::bench::io::{
    metric_table, read_results_file, write_profile, write_results_file,
};
use structured_lbfgs::bench::profile::performance_profile;
use structured_lbfgs::bench::{
    method_config, parse_memory, run_grid, write_traces, ExperimentGrid, MethodSpec, Metric,
    ProblemKind, ProblemSpec,
};
use structured_lbfgs::driver::{RoseConfig, SeedSolver};
use structured_lbfgs::krylov::EsParams;

#[derive(Parser)]
#[command(
    name = "bench",
    about = "Run structured L-BFGS experiment grids",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Quadratic,
    ToyNonconvex,
    HalfNorm,
}

#[derive(Subcommand)]
enum Command {
    /// Solve every (problem, method, memory) cell and write a results CSV.
    #[command(args_override_self = true)]
    Run {
        #[arg(long, value_enum, default_value = "quadratic")]
        suite: Suite,
        /// Comma-separated regularization strengths.
        #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_value = "1e-5,1e-3,1e-1")]
        alpha: Vec<f64>,
        /// Comma-separated memory sizes; `inf` for unlimited.
        #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_value = "0,3,5,10,inf")]
        memory: Vec<String>,
        /// Comma-separated method names.
        #[arg(
            long,
            action = ArgAction::Set,
            value_delimiter = ',',
            default_value = "rose-dg-full,rose-dg-upperz,rose-dg-bbband,scalar-taug"
        )]
        method: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        /// Directory for per-iteration trace CSVs.
        #[arg(long)]
        trace_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        stencil_scale: f64,
        /// Unknowns of the toy and half-norm suites.
        #[arg(long, default_value_t = 64)]
        dim: usize,
        /// Solve seed systems with a dense factorisation (default).
        #[arg(long, overrides_with = "minres")]
        exact_seed: bool,
        /// Solve seed systems with Jacobi-preconditioned MINRES.
        #[arg(long, overrides_with = "exact_seed")]
        minres: bool,
        /// Adaptive MINRES budget (implies --minres).
        #[arg(long)]
        es: bool,
        #[arg(long, default_value_t = 50)]
        minres_max_iter: usize,
        #[arg(long, default_value_t = 1e-2)]
        minres_tol: f64,
        /// Gradient tolerance; defaults to 1e-13 for quadratics, 1e-6 otherwise.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 5000)]
        max_outer: usize,
        /// Stop on the combined value/step/gradient test as well.
        #[arg(long)]
        fair_stopping: bool,
        /// Runs per cell; runtime is the median.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
    /// Turn a results CSV into performance profiles.
    #[command(args_override_self = true)]
    Profile {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "runtime")]
        metric: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::Run {
            suite,
            alpha,
            memory,
            method,
            out,
            trace_dir,
            stencil_scale,
            dim,
            exact_seed: _,
            minres,
            es,
            minres_max_iter,
            minres_tol,
            eps,
            max_outer,
            fair_stopping,
            repeats,
        } => {
            let seed_solver = if es {
                SeedSolver::MinresAdaptive {
                    params: EsParams::default(),
                    rel_tol: minres_tol,
                }
            } else if minres {
                SeedSolver::Minres {
                    max_iter: minres_max_iter,
                    rel_tol: minres_tol,
                }
            } else {
                SeedSolver::Exact
            };
            let default_eps = match suite {
                Suite::Quadratic | Suite::HalfNorm => 1e-13,
                Suite::ToyNonconvex => 1e-6,
            };
            let base = RoseConfig {
                eps: eps.unwrap_or(default_eps),
                seed_solver,
                max_outer,
                fair_stopping,
                ..RoseConfig::default()
            };

            let problems: Vec<ProblemSpec> = match suite {
                Suite::Quadratic => alpha
                    .iter()
                    .map(|&a| ProblemSpec {
                        name: "quadratic".into(),
                        kind: ProblemKind::Quadratic {
                            alpha: a,
                            stencil_scale,
                        },
                    })
                    .collect(),
                Suite::ToyNonconvex => alpha
                    .iter()
                    .map(|&a| ProblemSpec {
                        name: "toy-nonconvex".into(),
                        kind: ProblemKind::ToyNonconvex { n: dim, alpha: a },
                    })
                    .collect(),
                Suite::HalfNorm => vec![ProblemSpec {
                    name: "half-norm".into(),
                    kind: ProblemKind::HalfNorm { n: dim },
                }],
            };

            let mut methods = Vec::new();
            for name in &method {
                for m in &memory {
                    let config = RoseConfig {
                        memory: parse_memory(m)?,
                        ..method_config(name, &base)?
                    };
                    methods.push(MethodSpec {
                        name: name.clone(),
                        config,
                    });
                }
            }

            let grid = ExperimentGrid {
                problems,
                methods,
                metric: Metric::Runtime,
                repeats,
            };
            let result = run_grid(&grid)?;
            write_results_file(&out, &result.cells)?;
            if let Some(dir) = trace_dir {
                write_traces(&result, &dir)?;
            }
            let solved = result.cells.iter().filter(|c| c.solved()).count();
            eprintln!(
                "{} cells, {} solved; results written to {}",
                result.cells.len(),
                solved,
                out.display()
            );
        }
        Command::Profile { input, metric, out } => {
            let metric: Metric = metric.parse()?;
            let cells = read_results_file(&input)?;
            let (methods, table) = metric_table(&cells, metric);
            let curves = performance_profile(&table, &methods)?;
            let f = std::fs::File::create(&out)?;
            write_profile(f, &curves)?;
            eprintln!(
                "{} profile curves written to {}",
                curves.len(),
                out.display()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match expand_args(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
