//! Command-line front end.
//!
//! Exit codes: 0 success, 1 solver or I/O failure (including a profile
//! with no commonly solved problem), 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use regulus_core::{problems, RunOptions, RunReport, Solver};
use serde::Serialize;

use crate::profile::{self, Metric, DEFAULT_TAU_GRID};
use crate::{batch, config_file, records, trace, HarnessError};

#[derive(Parser, Debug)]
#[command(
    name = "regulus",
    version,
    about = "Regularized L-BFGS solvers and benchmark runner"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Default)]
pub struct ParamArgs {
    /// Solver parameter file (flat `key = value`).
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Override one parameter, e.g. `--set M=0`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one problem and print the run report as JSON.
    Solve {
        /// `name` or `name:n`
        problem: String,
        #[arg(long, value_enum)]
        solver: SolverArg,
        /// Write the per-iteration trace as JSON lines.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run a problem x solver batch and write one CSV record per run.
    Bench {
        /// `all` or a comma-separated list of problems.
        #[arg(long, default_value = "all")]
        problems: String,
        /// `all` or a comma-separated list of solvers.
        #[arg(long, default_value = "all")]
        solvers: String,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Worker threads; REGULUS_JOBS takes precedence.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Compute performance profiles from a record file.
    Profile {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "nf")]
        metric: MetricArg,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Comma-separated tau grid.
        #[arg(long, value_delimiter = ',')]
        tau: Vec<f64>,
        /// Profile over problems solved by any solver; failures count as
        /// infinitely expensive.
        #[arg(long)]
        union: bool,
    },
    /// List the bundled problems.
    List,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SolverArg {
    Lbfgs,
    Rlbfgs,
    RlbfgsSw,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Lbfgs => Solver::Lbfgs,
            SolverArg::Rlbfgs => Solver::Rlbfgs,
            SolverArg::RlbfgsSw => Solver::RlbfgsSw,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MetricArg {
    Nf,
    Time,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    problem: String,
    solver: &'a str,
    status: &'a str,
    iterations: usize,
    inner_iterations: usize,
    n_f: usize,
    n_g: usize,
    final_f: f64,
    final_residual: f64,
    wall_time: f64,
    x: &'a [f64],
}

impl<'a> ReportJson<'a> {
    fn new(problem: String, r: &'a RunReport) -> Self {
        ReportJson {
            problem,
            solver: r.solver_name(),
            status: r.status.name(),
            iterations: r.iterations,
            inner_iterations: r.inner_iterations,
            n_f: r.counters.n_f,
            n_g: r.counters.n_g,
            final_f: r.final_f,
            final_residual: r.final_residual,
            wall_time: r.wall_time,
            x: &r.x,
        }
    }
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Problem(_) | HarnessError::Config(_) => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return 0;
            }
            if !e.render().to_string().contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return 2;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n");
            eprintln!("{}", Cli::command().render_usage());
            2
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn execute(cmd: Command) -> Result<i32, Failure> {
    match cmd {
        Command::Solve {
            problem,
            solver,
            trace: trace_path,
            params,
        } => {
            let cfg = config_file::resolve(params.config.as_deref(), &params.overrides)?;
            let p = problems::lookup(&problem).map_err(HarnessError::from)?;
            let options = RunOptions {
                trace: trace_path.is_some(),
                ..RunOptions::default()
            };
            let report = batch::timed_solve(&p, solver.into(), &cfg, options)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            if let Some(path) = trace_path {
                let f = std::fs::File::create(&path).map_err(HarnessError::from)?;
                trace::write_trace(std::io::BufWriter::new(f), &report.trace)?;
            }
            let json = serde_json::to_string_pretty(&ReportJson::new(p.label(), &report))
                .map_err(HarnessError::from)?;
            println!("{json}");
            Ok(if report.status.is_success() { 0 } else { 1 })
        }
        Command::Bench {
            problems: psel,
            solvers: ssel,
            out,
            jobs,
            params,
        } => {
            let cfg = config_file::resolve(params.config.as_deref(), &params.overrides)?;
            let ps = batch::select_problems(&psel)?;
            let ss = batch::select_solvers(&ssel).map_err(|e| Failure::Usage(e.to_string()))?;
            if ps.is_empty() || ss.is_empty() {
                return Err(Failure::Usage("empty problem or solver selection".into()));
            }
            let recs = batch::run_batch(&ps, &ss, &cfg, batch::effective_jobs(jobs))?;
            records::save(&out, &recs)?;
            let solved = recs.iter().filter(|r| r.status.is_success()).count();
            eprintln!(
                "{} runs, {} converged -> {}",
                recs.len(),
                solved,
                out.display()
            );
            Ok(0)
        }
        Command::Profile {
            input,
            metric,
            out,
            tau,
            union,
        } => {
            let grid = if tau.is_empty() {
                DEFAULT_TAU_GRID.to_vec()
            } else {
                profile::normalize_grid(&tau)?
            };
            let recs = records::load(&input)?;
            let metric = match metric {
                MetricArg::Nf => Metric::Nf,
                MetricArg::Time => Metric::Time,
            };
            let curves = profile::performance_profile(&recs, metric, &grid, union)?;
            let f = std::fs::File::create(&out).map_err(HarnessError::from)?;
            profile::write_profile(std::io::BufWriter::new(f), &curves)?;
            Ok(0)
        }
        Command::List => {
            let mut stdout = std::io::stdout().lock();
            for p in problems::registry() {
                let _ = writeln!(stdout, "{}", p.label());
            }
            Ok(0)
        }
    }
}
