//! `pgd`: greedy rank-one solvers for discrete Sylvester problems and the
//! experiment harness around them.
//!
//! Exit codes: 0 converged / all checks passed, 2 solver stalled before the
//! requested residual, 3 invalid configuration, 4 oracle mismatch beyond
//! tolerance.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use pgd_cli::config::{parse_algorithm, ExperimentKind, FileConfig, RunConfig};
use pgd_cli::experiments::{self, EXIT_INVALID_CONFIG};

#[derive(Parser)]
#[command(
    name = "pgd",
    about = "Greedy rank-one (separated representation) solvers for DG + GD = F and friends",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one greedy solve and write its trace (and solution matrix).
    Solve(CommonArgs),
    /// Greedy singular value decomposition of a matrix, checked against the
    /// dense oracle.
    Svd(CommonArgs),
    /// Run a named experiment: energy-trace, iteration-scaling, svd-demo,
    /// counterexample, nonsym, rate-fit.
    Experiment(ExperimentArgs),
    /// Verify the analytic Euler-Lagrange constructions.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Structured config file (TOML); flags override file values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Problem dimension.
    #[arg(long)]
    d: Option<usize>,
    /// Comma-separated dimensions (iteration-scaling).
    #[arg(long, value_delimiter = ',')]
    d_list: Option<Vec<usize>>,
    /// Operator: laplacian | diag-linspace:LO:HI | identity | file:PATH.
    #[arg(long)]
    operator: Option<String>,
    /// Right-hand side: random-uniform | random-normal | rank-one | file:PATH.
    #[arg(long)]
    rhs: Option<String>,
    /// Frobenius-norm stopping threshold on the residual.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    max_terms: Option<usize>,
    /// Greedy variant: pure | orthogonal.
    #[arg(long)]
    algorithm: Option<String>,
    /// Fixed-point relative tolerance.
    #[arg(long)]
    fp_tol: Option<f64>,
    #[arg(long)]
    fp_max_sweeps: Option<usize>,
    /// Fixed-point restarts per term.
    #[arg(long)]
    restarts: Option<usize>,
    /// Antisymmetric perturbation scale for B = D + scale * A.
    #[arg(long)]
    antisym_scale: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated seeds.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    /// Relative tolerance for oracle comparisons.
    #[arg(long)]
    oracle_tol: Option<f64>,
    /// Output directory for CSV files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment name.
    name: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = std::f64::consts::PI * std::f64::consts::PI)]
    lambda1: f64,
    #[arg(long, default_value_t = 4.0 * std::f64::consts::PI * std::f64::consts::PI)]
    lambda2: f64,
    #[arg(long, default_value_t = 8)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Offset added to alpha1 to demonstrate the sensitivity of the check.
    #[arg(long)]
    perturb_alpha1: Option<f64>,
}

impl CommonArgs {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            FileConfig::load(path)?.apply_to(&mut cfg)?;
        }
        if let Some(d) = self.d {
            cfg.d_list = vec![d];
        }
        if let Some(list) = &self.d_list {
            cfg.d_list = list.clone();
        }
        if let Some(op) = &self.operator {
            cfg.operator = op.parse()?;
        }
        if let Some(r) = &self.rhs {
            cfg.rhs = r.parse()?;
        }
        if let Some(v) = self.eps {
            cfg.eps = v;
        }
        if let Some(v) = self.max_terms {
            cfg.max_terms = v;
        }
        if let Some(a) = &self.algorithm {
            cfg.algorithm = parse_algorithm(a)?;
        }
        if let Some(v) = self.fp_tol {
            cfg.fp_tol = v;
        }
        if let Some(v) = self.fp_max_sweeps {
            cfg.fp_max_sweeps = v;
        }
        if let Some(v) = self.restarts {
            cfg.restarts = v;
        }
        if let Some(v) = self.antisym_scale {
            cfg.antisym_scale = v;
        }
        if let Some(s) = self.seed {
            cfg.seeds = vec![s];
        }
        if let Some(s) = &self.seeds {
            cfg.seeds = s.clone();
        }
        if let Some(v) = self.oracle_tol {
            cfg.oracle_tol = v;
        }
        if let Some(p) = &self.out {
            cfg.out = p.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run() -> Result<i32> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INVALID_CONFIG,
            };
            e.print().ok();
            return Ok(code);
        }
    };
    match cli.command {
        Command::Solve(common) => {
            let cfg = match common.resolve() {
                Ok(c) => c,
                Err(e) => return invalid_config(e),
            };
            experiments::ensure_out_dir(&cfg.out)?;
            experiments::run_solve(&cfg)
        }
        Command::Svd(common) => {
            let cfg = match common.resolve() {
                Ok(c) => c,
                Err(e) => return invalid_config(e),
            };
            experiments::ensure_out_dir(&cfg.out)?;
            experiments::run_svd_demo(&cfg)
        }
        Command::Experiment(args) => {
            let kind: ExperimentKind = match args.name.parse() {
                Ok(k) => k,
                Err(e) => return invalid_config(e),
            };
            let mut cfg = match args.common.resolve() {
                Ok(c) => c,
                Err(e) => return invalid_config(e),
            };
            cfg.experiment = Some(kind);
            experiments::ensure_out_dir(&cfg.out)?;
            experiments::run_experiment(kind, &cfg)
        }
        Command::Verify(args) => experiments::run_counterexample(
            args.lambda1,
            args.lambda2,
            args.d,
            args.seed,
            args.perturb_alpha1,
        ),
    }
}

fn invalid_config(e: anyhow::Error) -> Result<i32> {
    eprintln!("invalid configuration: {e:#}");
    Ok(EXIT_INVALID_CONFIG)
}

/// Validation failures surfacing during execution (bad operator files,
/// dimension clashes, non-SPD matrices requested as SPD) count as invalid
/// configuration; anything else is an unexpected error.
fn classify(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.downcast_ref::<pgd_cli::matfile::MatFileError>().is_some()
            || cause.downcast_ref::<pgd_cli::config::ConfigError>().is_some()
        {
            return EXIT_INVALID_CONFIG as u8;
        }
        if let Some(core_err) = cause.downcast_ref::<pgd_core::Error>() {
            use pgd_core::Error::*;
            if matches!(
                core_err,
                NotSymmetric { .. }
                    | NotPositiveDefinite { .. }
                    | InvalidConfig(_)
                    | DimensionMismatch { .. }
                    | InvalidInput(_)
            ) {
                return EXIT_INVALID_CONFIG as u8;
            }
        }
    }
    1
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(classify(&e))
        }
    }
}
