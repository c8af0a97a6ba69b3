//! Command-line front end: `run`, `compare`, `verify` and `report`.
//!
//! Exit codes: 0 success or agreement, 1 disagreement, 2 usage or
//! configuration error, 3 finite-difference convergence failure.

mod commands;
mod config;
mod render;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::to_f64;
use crate::error::{Error, Result};
use crate::hierarchy::SeriesSolution;
use crate::oracle::{extrapolated_ground_state, GridConfig, SpectralEstimate};
use crate::trajectory::PotentialSpec;

pub use commands::{cmd_compare, cmd_run, cmd_verify, fit_order, VerifyPoint, VerifyReport};
pub use config::{Format, Method, NumericParams, RunConfig, MAX_DEPTH, MAX_ORDER};
pub use render::{
    render_comparison, render_report, render_solution, render_verify, term_rows, Report, TermRow,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "trajquad",
    version,
    about = "Single-trajectory quadrature series for the 2D anharmonic ground state"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one pipeline and print its series.
    Run(RunArgs),
    /// Run several pipelines and diff them term by term.
    Compare(CompareArgs),
    /// Check a series energy against the finite-difference eigensolver.
    Verify(VerifyArgs),
    /// Print solutions together with their comparison.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON file shaped like RunConfig; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Anisotropy b as p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Perturbation order.
    #[arg(long)]
    pub order: Option<u32>,
    /// Inverse powers of g kept beyond the leading level.
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    /// Comma-separated μ values.
    #[arg(long, value_delimiter = ',')]
    pub sweep: Vec<f64>,
    /// Interior points per axis on the coarsest grid.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Grid levels for Richardson extrapolation.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Largest accepted relative deviation.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Pipelines to run (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub methods: Vec<Method>,
    /// Saved solution used as the reference.
    #[arg(long)]
    pub golden: Option<PathBuf>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Pipelines to run when no inputs are given (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub methods: Vec<Method>,
    /// Saved solutions to report on instead of running pipelines.
    #[arg(long = "input")]
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn load_solution(path: &Path) -> Result<SeriesSolution> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

impl CommonArgs {
    fn config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_json(&read(p)?)?,
            None => RunConfig::default(),
        };
        if let Some(b) = &self.b {
            cfg.b = b.clone();
        }
        if let Some(o) = self.order {
            cfg.order = o;
        }
        if let Some(d) = self.depth {
            cfg.depth = d;
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        Ok(cfg)
    }
}

impl NumericArgs {
    fn given(&self) -> bool {
        self.g.is_some() || self.mu.is_some() || !self.sweep.is_empty() || self.grid.is_some()
    }

    /// Flags layered over the config's numeric block, or over the defaults
    /// when `required`.
    fn merge(&self, base: Option<NumericParams>, required: bool) -> Option<NumericParams> {
        if base.is_none() && !required && !self.given() {
            return None;
        }
        let mut n = base.unwrap_or_default();
        if let Some(g) = self.g {
            n.g = g;
        }
        let mut mus: Vec<f64> = self.mu.into_iter().collect();
        mus.extend(&self.sweep);
        if !mus.is_empty() {
            n.mu = mus;
        }
        if let Some(grid) = self.grid {
            n.grid = grid;
        }
        if let Some(l) = self.levels {
            n.levels = l;
        }
        if let Some(t) = self.tol {
            n.tolerance = t;
        }
        Some(n)
    }
}

fn estimate_for(cfg: &RunConfig) -> Result<Option<SpectralEstimate>> {
    let Some(n) = &cfg.numeric else {
        return Ok(None);
    };
    let b = cfg.validate()?;
    let mu = n.mu[0];
    let spec = PotentialSpec::quartic_coupling(b.clone())?;
    let grid = GridConfig {
        nx: n.grid,
        ny: n.grid,
        ..GridConfig::default_for(n.g, to_f64(&b))
    };
    let ext = extrapolated_ground_state(&spec, n.g, mu, &grid, n.levels)?;
    let mut est = ext.estimates.last().cloned().expect("at least one level");
    est.energy = ext.energy;
    Ok(Some(est))
}

fn configs_for(base: &RunConfig, methods: &[Method]) -> Vec<RunConfig> {
    let methods = if methods.is_empty() {
        &Method::ALL[..]
    } else {
        methods
    };
    methods
        .iter()
        .map(|m| RunConfig {
            method: *m,
            ..base.clone()
        })
        .collect()
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Config(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Run(a) => {
            let mut cfg = a.common.config()?;
            if let Some(m) = a.method {
                cfg.method = m;
            }
            let sol = cmd_run(&cfg)?;
            emit(&a.common.out, &render_solution(&sol, cfg.format)?)?;
            Ok(EXIT_OK)
        }
        Command::Compare(a) => {
            let mut cfg = a.common.config()?;
            cfg.numeric = a.numeric.merge(cfg.numeric.take(), false);
            cfg.validate()?;
            let golden = a.golden.as_deref().map(load_solution).transpose()?;
            let estimate = estimate_for(&cfg)?;
            let report = cmd_compare(&configs_for(&cfg, &a.methods), golden, estimate.as_ref())?;
            emit(&a.common.out, &render_comparison(&report, cfg.format)?)?;
            Ok(if report.agree() {
                EXIT_OK
            } else {
                EXIT_DISAGREE
            })
        }
        Command::Verify(a) => {
            let mut cfg = a.common.config()?;
            if let Some(m) = a.method {
                cfg.method = m;
            }
            cfg.numeric = a.numeric.merge(cfg.numeric.take(), true);
            let report = cmd_verify(&cfg)?;
            emit(&a.common.out, &render_verify(&report, cfg.format)?)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_DISAGREE })
        }
        Command::Report(a) => {
            let mut cfg = a.common.config()?;
            cfg.numeric = a.numeric.merge(cfg.numeric.take(), false);
            cfg.validate()?;
            let estimate = estimate_for(&cfg)?;
            let solutions: Vec<SeriesSolution> = if a.inputs.is_empty() {
                configs_for(&cfg, &a.methods)
                    .iter()
                    .map(cmd_run)
                    .collect::<Result<_>>()?
            } else {
                a.inputs
                    .iter()
                    .map(|p| load_solution(p))
                    .collect::<Result<_>>()?
            };
            let comparison = crate::oracle::compare_methods(&solutions, estimate.as_ref());
            let agree = comparison.agree();
            emit(
                &a.common.out,
                &render_report(
                    &Report {
                        solutions,
                        comparison,
                    },
                    cfg.format,
                )?,
            )?;
            Ok(if agree { EXIT_OK } else { EXIT_DISAGREE })
        }
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ConvergenceFailure { .. } => EXIT_CONVERGENCE,
                _ => EXIT_USAGE,
            }
        }
    }
}
