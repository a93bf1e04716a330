//! Solver x problem batches.

use std::time::Instant;

use rayon::prelude::*;
use regulus_core::error::SetupError;
use regulus_core::problems::Problem;
use regulus_core::{solve_with, RunOptions, RunReport, Solver, SolverConfig};

use crate::records::RunRecord;
use crate::{HarnessError, Result};

/// Runs one solver on one problem from its standard start and fills in
/// the wall-clock time.
pub fn timed_solve(
    problem: &Problem,
    solver: Solver,
    config: &SolverConfig,
    options: RunOptions,
) -> Result<RunReport, SetupError> {
    let start = Instant::now();
    let mut report = solve_with(solver, problem, &problem.x0, config, options)?;
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}

/// One batch cell. Setup errors cannot happen for registry problems with
/// a validated config, so they are reported to the caller instead of being
/// folded into a status.
pub fn run_one(problem: &Problem, solver: Solver, config: &SolverConfig) -> Result<RunRecord> {
    let report = timed_solve(problem, solver, config, RunOptions::default())?;
    Ok(RunRecord::from_report(&problem.label(), &report))
}

/// Runs every (problem, solver) pair. `jobs <= 1` runs serially on the
/// calling thread. Records come back sorted by problem label, then solver
/// name, whatever the execution order was.
pub fn run_batch(
    problems: &[Problem],
    solvers: &[Solver],
    config: &SolverConfig,
    jobs: usize,
) -> Result<Vec<RunRecord>> {
    config
        .validate()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let cells: Vec<(&Problem, Solver)> = problems
        .iter()
        .flat_map(|p| solvers.iter().map(move |&s| (p, s)))
        .collect();

    let mut records = if jobs <= 1 {
        cells
            .iter()
            .map(|&(p, s)| run_one(p, s, config))
            .collect::<Result<Vec<_>>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        pool.install(|| {
            cells
                .par_iter()
                .map(|&(p, s)| run_one(p, s, config))
                .collect::<Result<Vec<_>>>()
        })?
    };
    records.sort_by(|a, b| (&a.problem, &a.solver).cmp(&(&b.problem, &b.solver)));
    Ok(records)
}

/// `"all"` or a comma-separated list of `name` / `name:n`.
pub fn select_problems(sel: &str) -> Result<Vec<Problem>> {
    if sel.trim() == "all" {
        return Ok(regulus_core::problems::registry());
    }
    sel.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| regulus_core::problems::lookup(s.trim()).map_err(HarnessError::from))
        .collect()
}

/// `"all"` or a comma-separated list of solver names.
pub fn select_solvers(sel: &str) -> Result<Vec<Solver>, regulus_core::solvers::UnknownSolver> {
    if sel.trim() == "all" {
        return Ok(Solver::ALL.to_vec());
    }
    let mut out: Vec<Solver> = Vec::new();
    for s in sel.split(',').filter(|s| !s.trim().is_empty()) {
        let s: Solver = s.trim().parse()?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

/// `REGULUS_JOBS` wins over the command-line value when it parses.
pub fn effective_jobs(cli: usize) -> usize {
    std::env::var("REGULUS_JOBS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(cli)
        .max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use regulus_core::Status;

    #[test]
    fn one_problem_three_solvers() {
        let p = select_problems("rosenbrock:2").unwrap();
        let recs = run_batch(&p, &Solver::ALL, &SolverConfig::default(), 1).unwrap();
        assert_eq!(recs.len(), 3);
        let names: Vec<_> = recs.iter().map(|r| r.solver.as_str()).collect();
        assert_eq!(names, ["lbfgs", "rlbfgs", "rlbfgs-sw"]);
        assert!(recs.iter().all(|r| r.status == Status::Converged));
    }

    #[test]
    fn budget_failure_still_recorded() {
        let p = select_problems("rosenbrock:100").unwrap();
        let cfg = SolverConfig {
            max_fevals: 5,
            ..SolverConfig::default()
        };
        let recs = run_batch(&p, &[Solver::Rlbfgs], &cfg, 1).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].status, Status::EvalBudgetExceeded);
    }

    #[test]
    fn canonical_order() {
        let p = select_problems("wood,beale").unwrap();
        let recs = run_batch(
            &p,
            &[Solver::RlbfgsSw, Solver::Lbfgs],
            &SolverConfig::default(),
            2,
        )
        .unwrap();
        let keys: Vec<_> = recs
            .iter()
            .map(|r| format!("{} {}", r.problem, r.solver))
            .collect();
        assert_eq!(
            keys,
            [
                "beale:2 lbfgs",
                "beale:2 rlbfgs-sw",
                "wood:4 lbfgs",
                "wood:4 rlbfgs-sw"
            ]
        );
    }

    #[test]
    fn jobs_from_environment() {
        std::env::set_var("REGULUS_JOBS", "3");
        assert_eq!(effective_jobs(1), 3);
        std::env::set_var("REGULUS_JOBS", "lots");
        assert_eq!(effective_jobs(2), 2);
        std::env::remove_var("REGULUS_JOBS");
        assert_eq!(effective_jobs(0), 1);
        assert_eq!(effective_jobs(5), 5);
    }

    #[test]
    fn selections() {
        assert_eq!(select_solvers("all").unwrap().len(), 3);
        assert_eq!(
            select_solvers("rlbfgs,lbfgs,rlbfgs").unwrap(),
            [Solver::Rlbfgs, Solver::Lbfgs]
        );
        assert!(select_solvers("bfgs").is_err());
        assert!(select_problems("nope").is_err());
        assert_eq!(
            select_problems("all").unwrap().len(),
            regulus_core::problems::registry().len()
        );
    }
}
