//! `renyi-ci`: Rényi common information of the doubly symmetric binary source.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails or a
//! numerical routine gives up, 2 on invalid arguments, 3 when an output
//! file cannot be written.

mod curve;
mod output;
mod schema;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use renyi_ci::lemmas::{
    verify_chi_properties, verify_condition_chain, verify_coupling_closed_form,
    verify_entropy_splitting, verify_oracle_sandwich, verify_phi_ratio_monotone,
    VerificationReport,
};
use renyi_ci::negative::{condition1_holds, epsilon0_in, gamma_ub_negative, phase_scan};
use renyi_ci::tol::CONDITION1_GRID;
use renyi_ci::{renyi_ci, wyner_ci, CiResult, Error, Order};
use serde::Serialize;

use output::{emit, json_document, sidecar, Run, WriteError};

#[derive(Debug, Parser)]
#[command(name = "renyi-ci", version, about = "Rényi common information of DSBS(ε), in bits")]
struct Cli {
    /// Print the versioned CSV/JSON output layouts and exit.
    #[arg(long, global = true)]
    schema: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Common information at one order.
    Compute {
        #[arg(long)]
        epsilon: f64,
        /// Order: a decimal, `inf` or `-inf`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Order,
        /// For negative orders, report the upper bound even where it is not known to be tight.
        #[arg(long)]
        upper_bound: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of the common information against the order.
    Curve {
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = -100.0, allow_hyphen_values = true)]
        alpha_min: f64,
        #[arg(long, default_value_t = 1000.0, allow_hyphen_values = true)]
        alpha_max: f64,
        /// Number of non-sentinel orders.
        #[arg(long, default_value_t = 41)]
        points: usize,
        /// CSV destination; the manifest goes to `<out>.manifest.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Threshold of Condition 1 by scan and bisection.
    Epsilon0 {
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Grid for each Condition-1 evaluation.
        #[arg(long, default_value_t = CONDITION1_GRID)]
        grid: usize,
        #[arg(long, default_value_t = 0.01)]
        lo: f64,
        #[arg(long, default_value_t = 0.10)]
        hi: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Condition 1 at one crossover probability.
    Condition1 {
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = CONDITION1_GRID)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order −∞ upper bound against Wyner's value over a range of ε.
    PhaseScan {
        #[arg(long, default_value_t = 0.01)]
        eps_min: f64,
        #[arg(long, default_value_t = 0.1)]
        eps_max: f64,
        #[arg(long, default_value_t = 19)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerical verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Main density of each suite (splitting points per axis, χ points in
        /// t, ratio points, chain points, coupling triples).
        #[arg(long)]
        grid: Option<usize>,
        /// Crossover probabilities for the chain suite.
        #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.03])]
        epsilon: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Splitting,
    Chi,
    PhiRatio,
    Chain,
    Coupling,
    Brute,
}

enum Failure {
    Library(Error),
    Usage(String),
    Write(WriteError),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Library(e)
    }
}

impl From<WriteError> for Failure {
    fn from(e: WriteError) -> Self {
        Self::Write(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if cli.schema {
        println!("{}", serde_json::to_string_pretty(&schema::schema()).expect("schema"));
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (see --help)");
        return ExitCode::from(2);
    };
    match run(command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_domain(&e) { 2 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Write(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn is_domain(e: &Error) -> bool {
    matches!(
        e,
        Error::Domain { .. }
            | Error::NotNormalized(_)
            | Error::InfiniteKappa
            | Error::PhaseUncertain { .. }
            | Error::OutOfRegion(_)
            | Error::SameVerdict { .. }
    )
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("RENYI_CI_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("RENYI_CI_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ComputeOutput {
    result: CiResult,
    condition1_holds: Option<bool>,
    wyner: f64,
    gap: Option<f64>,
}

#[derive(Serialize)]
struct PhaseScanOutput {
    points: Vec<renyi_ci::negative::PhasePoint>,
}

#[derive(Serialize)]
struct VerifyOutput {
    pass: bool,
    reports: Vec<VerificationReport>,
}

fn run(command: Command) -> Result<(), Failure> {
    let mut run = Run::start();
    match command {
        Command::Compute {
            epsilon,
            alpha,
            upper_bound,
            out,
        } => {
            let wyner = wyner_ci(epsilon)?;
            let output = if alpha.is_negative() && epsilon > 0.0 && epsilon < 0.5 {
                let holds = condition1_holds(epsilon, CONDITION1_GRID)?.holds;
                run.grid("condition1", CONDITION1_GRID);
                if upper_bound {
                    run.grid("negative_r", renyi_ci::tol::NEGATIVE_GRID);
                    let result = gamma_ub_negative(epsilon, alpha)?;
                    ComputeOutput {
                        gap: Some(result.value - wyner),
                        result,
                        condition1_holds: Some(holds),
                        wyner,
                    }
                } else if holds {
                    ComputeOutput {
                        result: renyi_ci(epsilon, alpha)?,
                        condition1_holds: Some(true),
                        wyner,
                        gap: None,
                    }
                } else {
                    return Err(Failure::Usage(format!(
                        "Condition 1 fails at epsilon = {epsilon}; the value at alpha = {alpha} \
                         is not known in closed form. Pass --upper-bound to report the upper bound."
                    )));
                }
            } else {
                ComputeOutput {
                    result: renyi_ci(epsilon, alpha)?,
                    condition1_holds: None,
                    wyner,
                    gap: None,
                }
            };
            emit(&json_document(&output, &run.finish()), out.as_deref())?;
        }
        Command::Curve {
            epsilon,
            alpha_min,
            alpha_max,
            points,
            out,
        } => {
            if !(epsilon > 0.0 && epsilon <= 0.5) {
                return Err(Failure::Library(Error::Domain {
                    name: "epsilon",
                    value: epsilon,
                    expected: "(0, 1/2]",
                }));
            }
            let alphas = curve::alpha_grid(alpha_min, alpha_max, points)?;
            let rows = curve::curve_rows(epsilon, &alphas)?;
            run.grid("points", points)
                .grid("alpha_min", alpha_min)
                .grid("alpha_max", alpha_max)
                .grid("condition1", CONDITION1_GRID)
                .grid("negative_r", renyi_ci::tol::NEGATIVE_GRID);
            let csv = curve::to_csv(&rows);
            let manifest = json_document(&serde_json::json!({}), &run.finish());
            match out {
                Some(path) => {
                    emit(&csv, Some(&path))?;
                    emit(&manifest, Some(&sidecar(&path)))?;
                }
                None => {
                    emit(&csv, None)?;
                    eprint!("{manifest}");
                }
            }
        }
        Command::Epsilon0 {
            tol,
            grid,
            lo,
            hi,
            out,
        } => {
            let e = epsilon0_in(tol, lo, hi, grid)?;
            run.grid("condition1", grid).grid("scan", e.scan_points);
            emit(&json_document(&e, &run.finish()), out.as_deref())?;
        }
        Command::Condition1 { epsilon, grid, out } => {
            let r = condition1_holds(epsilon, grid)?;
            run.grid("condition1", grid);
            emit(&json_document(&r, &run.finish()), out.as_deref())?;
        }
        Command::PhaseScan {
            eps_min,
            eps_max,
            points,
            out,
        } => {
            let points_out = phase_scan(eps_min, eps_max, points)?;
            run.grid("points", points)
                .grid("negative_r", renyi_ci::tol::NEGATIVE_GRID);
            emit(
                &json_document(&PhaseScanOutput { points: points_out }, &run.finish()),
                out.as_deref(),
            )?;
        }
        Command::Verify {
            suite,
            seed,
            grid,
            epsilon,
            out,
        } => {
            run.seed(seed);
            let reports = verify(suite, seed, grid, &epsilon, &mut run)?;
            let pass = reports.iter().all(|r| r.pass);
            for r in &reports {
                eprintln!(
                    "{:<10} {}  worst {} (tolerance {})",
                    r.suite,
                    if r.pass { "pass" } else { "FAIL" },
                    output::fmt_sig(r.worst_violation),
                    output::fmt_sig(r.tolerance_used)
                );
            }
            emit(
                &json_document(&VerifyOutput { pass, reports }, &run.finish()),
                out.as_deref(),
            )?;
            if !pass {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn verify(
    suite: Suite,
    seed: u64,
    grid: Option<usize>,
    chain_eps: &[f64],
    run: &mut Run,
) -> Result<Vec<VerificationReport>, Failure> {
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let mut reports = Vec::new();
    if wants(Suite::Splitting) {
        let n = grid.unwrap_or(50);
        run.grid("splitting", n);
        reports.push(verify_entropy_splitting(n));
    }
    if wants(Suite::Chi) {
        let n = grid.unwrap_or(50);
        run.grid("chi", serde_json::json!([10, 10, n]));
        reports.push(verify_chi_properties(10, 10, n)?);
    }
    if wants(Suite::PhiRatio) {
        let n = grid.unwrap_or(1000);
        run.grid("phi_ratio", n);
        reports.push(verify_phi_ratio_monotone(n));
    }
    if wants(Suite::Chain) {
        let n = grid.unwrap_or(2000);
        run.grid("chain", n);
        for &eps in chain_eps {
            reports.push(verify_condition_chain(eps, n)?);
        }
    }
    if wants(Suite::Coupling) {
        let n = grid.unwrap_or(1000);
        run.grid("coupling", n);
        reports.push(verify_coupling_closed_form(n, seed));
    }
    if wants(Suite::Brute) {
        run.grid("brute_pairs", 10).grid("brute_step", 0.02);
        reports.push(verify_oracle_sandwich(10, 0.02, seed)?);
    }
    Ok(reports)
}
