//! Iteration drivers.
//!
//! * [`solve_lbfgs`]: plain L-BFGS, strong Wolfe step along `-H g`.
//! * [`solve_rlbfgs`]: regularized L-BFGS. No step length; instead `mu` is
//!   raised until the (nonmonotone) ratio test accepts `x + d(mu)`, and
//!   lowered again after very successful steps.
//! * [`solve_rlbfgs_sw`]: as above, but when the accepted step was taken at
//!   `mu_min` and still fails the curvature condition, a strong Wolfe search
//!   continues along `d` from `x + d`.
//!
//! All three share the two-loop recursion; the baseline is the `mu = 0` path.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::config::{check_termination, scaled_residual, SolverConfig, Termination};
use crate::curvature::PairHistory;
use crate::direction::{gamma_scale, two_loop_direction, ScalingState};
use crate::error::{SetupError, SolveError};
use crate::linalg::{dot, norm};
use crate::linesearch::{strong_wolfe_search, WolfeParams};
use crate::objective::{EvalCounter, Evaluator, Objective};
use crate::step_control::{acceptance_ratio, model_reduction, nonmonotone_reference, FWindow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Solver {
    Lbfgs,
    Rlbfgs,
    RlbfgsSw,
}

impl Solver {
    pub const ALL: [Solver; 3] = [Solver::Lbfgs, Solver::Rlbfgs, Solver::RlbfgsSw];

    pub fn name(self) -> &'static str {
        match self {
            Solver::Lbfgs => "lbfgs",
            Solver::Rlbfgs => "rlbfgs",
            Solver::RlbfgsSw => "rlbfgs-sw",
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownSolver;

impl fmt::Display for UnknownSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown solver (expected lbfgs, rlbfgs or rlbfgs-sw)")
    }
}

impl core::error::Error for UnknownSolver {}

impl FromStr for Solver {
    type Err = UnknownSolver;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Solver::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or(UnknownSolver)
    }
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Converged,
    EvalBudgetExceeded,
    RegularizationOverflow,
    LineSearchFailure,
    NumericalBreakdown,
}

impl Status {
    pub const ALL: [Status; 5] = [
        Status::Converged,
        Status::EvalBudgetExceeded,
        Status::RegularizationOverflow,
        Status::LineSearchFailure,
        Status::NumericalBreakdown,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Status::Converged => "Converged",
            Status::EvalBudgetExceeded => "EvalBudgetExceeded",
            Status::RegularizationOverflow => "RegularizationOverflow",
            Status::LineSearchFailure => "LineSearchFailure",
            Status::NumericalBreakdown => "NumericalBreakdown",
        }
    }

    pub fn is_success(self) -> bool {
        self == Status::Converged
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Status {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Status::ALL.into_iter().find(|v| v.name() == s).ok_or(())
    }
}

impl From<SolveError> for Status {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::EvalBudgetExceeded => Status::EvalBudgetExceeded,
            SolveError::RegularizationOverflow => Status::RegularizationOverflow,
            SolveError::LineSearchFailure => Status::LineSearchFailure,
            SolveError::NumericalBreakdown | SolveError::NonpositiveModelReduction => {
                Status::NumericalBreakdown
            }
        }
    }
}

/// What happened with the extra line search of the `rlbfgs-sw` variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineSearchEvent {
    NotTriggered,
    Accepted,
    /// The search failed; the regularized step `x + d` was kept.
    FellBack,
}

/// One accepted outer iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub k: usize,
    /// `mu` that produced the accepted direction (0 for `lbfgs`).
    pub mu: f64,
    /// Accepted ratio (regularized solvers only).
    pub ratio: Option<f64>,
    /// `|g_k|` at the start of the iteration.
    pub gnorm: f64,
    /// Line search step: `alpha_k` for `lbfgs`, the extension beyond the unit
    /// step for `rlbfgs-sw`; `None` when no search ran.
    pub alpha: Option<f64>,
    /// `n_f` after the iteration.
    pub nf: usize,
    pub f: f64,
    pub f_ref: Option<f64>,
    pub f_trial: Option<f64>,
    pub model_red: Option<f64>,
    pub f_next: f64,
    pub inner: usize,
    pub line_search: LineSearchEvent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub trace: bool,
    /// Lets `rlbfgs-sw` fire its line search. With `false` it follows the
    /// exact `rlbfgs` path.
    pub sw_trigger: bool,
    /// Use `f(x_k)` as the ratio reference regardless of the nonmonotone
    /// window.
    pub monotone_ratio: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            trace: false,
            sw_trigger: true,
            monotone_ratio: false,
        }
    }
}

impl RunOptions {
    pub fn traced() -> Self {
        RunOptions {
            trace: true,
            ..RunOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub solver: Solver,
    pub status: Status,
    pub iterations: usize,
    /// Total number of rejected trials (`mu` increases) over the run.
    pub inner_iterations: usize,
    pub counters: EvalCounter,
    pub final_f: f64,
    /// `|g| / max(1, |x|)` at the final iterate.
    pub final_residual: f64,
    /// Filled in by callers that have a clock; the core never measures time.
    pub wall_time: f64,
    pub x: Vec<f64>,
    pub trace: Vec<TraceRecord>,
}

impl RunReport {
    pub fn solver_name(&self) -> &'static str {
        self.solver.name()
    }
}

/// State carried between outer iterations.
#[derive(Debug, Clone)]
pub struct IterateState {
    pub x: Vec<f64>,
    pub f: f64,
    pub g: Vec<f64>,
    pub mu: f64,
    pub history: PairHistory,
    pub scaling: ScalingState,
    pub fwindow: FWindow,
    pub k: usize,
}

impl IterateState {
    pub fn new(x: Vec<f64>, f: f64, g: Vec<f64>, config: &SolverConfig) -> Self {
        let mut fwindow = FWindow::new(config.nonmonotone);
        fwindow.push(f);
        IterateState {
            x,
            f,
            g,
            mu: config.mu0,
            history: PairHistory::new(config.memory),
            scaling: ScalingState::default(),
            fwindow,
            k: 0,
        }
    }

    /// Stores the pair of an accepted step and refreshes the scaling.
    ///
    /// Zero or non-finite displacements are dropped. A pair with `y = 0` is
    /// kept but leaves the scaling unchanged.
    fn record_pair(&mut self, s: Vec<f64>, y: Vec<f64>, alpha_floor: f64) {
        if self.history.push_pair(s, y).is_ok() {
            let newest = self.history.newest();
            if newest.is_some_and(|p| p.yy() > 0.0) {
                if let Ok(sc) = gamma_scale(newest, alpha_floor) {
                    self.scaling = sc;
                }
            }
        }
    }
}

/// Trial step accepted by the ratio test.
#[derive(Debug, Clone, PartialEq)]
pub struct AcceptedStep {
    pub d: Vec<f64>,
    pub x_trial: Vec<f64>,
    pub mu_used: f64,
    pub f_trial: f64,
    pub f_ref: f64,
    pub model_red: f64,
    pub ratio: f64,
    pub inner_iters: usize,
}

/// Raises `mu` by `gamma2` until the ratio test passes with `r >= eta1`.
pub fn accept_step_rlbfgs<F: Objective + ?Sized>(
    state: &IterateState,
    config: &SolverConfig,
    ev: &mut Evaluator<'_, F>,
    monotone_ratio: bool,
) -> Result<AcceptedStep, SolveError> {
    let f_ref = if monotone_ratio {
        state.f
    } else {
        nonmonotone_reference(&state.fwindow, state.k, config.nonmonotone)
    };
    let mut mu = state.mu;
    let mut inner_iters = 0;
    loop {
        let d = two_loop_direction(&state.history, &state.g, mu, state.scaling)?;
        let model_red = model_reduction(&state.g, &d)?;
        if model_red == 0.0 {
            return Err(SolveError::NonpositiveModelReduction);
        }
        let x_trial: Vec<f64> = state.x.iter().zip(&d).map(|(x, d)| x + d).collect();
        let f_trial = ev.trial_value(&x_trial)?;
        let ratio = acceptance_ratio(f_ref, f_trial, model_red);
        if ratio >= config.eta1 {
            return Ok(AcceptedStep {
                d,
                x_trial,
                mu_used: mu,
                f_trial,
                f_ref,
                model_red,
                ratio,
                inner_iters,
            });
        }
        mu *= config.gamma2;
        inner_iters += 1;
        if mu > config.mu_max {
            return Err(SolveError::RegularizationOverflow);
        }
    }
}

/// `mu` for the next outer iteration after a step accepted with ratio `r`.
pub fn update_mu(mu_used: f64, r: f64, config: &SolverConfig) -> f64 {
    debug_assert!(r >= config.eta1);
    if r >= config.eta2 {
        config.mu_min.max(config.gamma1 * mu_used)
    } else {
        mu_used
    }
}

pub fn solve_lbfgs<F: Objective + ?Sized>(
    objective: &F,
    x0: &[f64],
    config: &SolverConfig,
) -> Result<RunReport, SetupError> {
    solve_with(Solver::Lbfgs, objective, x0, config, RunOptions::default())
}

pub fn solve_rlbfgs<F: Objective + ?Sized>(
    objective: &F,
    x0: &[f64],
    config: &SolverConfig,
) -> Result<RunReport, SetupError> {
    solve_with(Solver::Rlbfgs, objective, x0, config, RunOptions::default())
}

pub fn solve_rlbfgs_sw<F: Objective + ?Sized>(
    objective: &F,
    x0: &[f64],
    config: &SolverConfig,
) -> Result<RunReport, SetupError> {
    solve_with(
        Solver::RlbfgsSw,
        objective,
        x0,
        config,
        RunOptions::default(),
    )
}

pub fn solve<F: Objective + ?Sized>(
    solver: Solver,
    objective: &F,
    x0: &[f64],
    config: &SolverConfig,
) -> Result<RunReport, SetupError> {
    solve_with(solver, objective, x0, config, RunOptions::default())
}

pub fn solve_with<F: Objective + ?Sized>(
    solver: Solver,
    objective: &F,
    x0: &[f64],
    config: &SolverConfig,
    options: RunOptions,
) -> Result<RunReport, SetupError> {
    config.validate()?;
    let n = objective.dimension();
    if x0.len() != n {
        return Err(SetupError::DimensionMismatch {
            expected: n,
            got: x0.len(),
        });
    }
    let mut run = Run {
        ev: Evaluator::new(objective, config.max_fevals),
        config,
        options,
        trace: Vec::new(),
        iterations: 0,
        inner_iterations: 0,
    };
    let mut g = vec![0.0; n];
    let start = run.ev.value_gradient(x0, &mut g);
    let mut state = match start {
        Ok(f) => IterateState::new(x0.to_vec(), f, g, config),
        Err(e) => {
            return Ok(run.finish(solver, e.into(), x0.to_vec(), f64::NAN, &g));
        }
    };
    let outcome = match solver {
        Solver::Lbfgs => run.lbfgs(&mut state),
        Solver::Rlbfgs => run.regularized(&mut state, false),
        Solver::RlbfgsSw => run.regularized(&mut state, options.sw_trigger),
    };
    let status = match outcome {
        Ok(()) => Status::Converged,
        Err(e) => e.into(),
    };
    Ok(run.finish(solver, status, state.x, state.f, &state.g))
}

struct Run<'a, F: ?Sized> {
    ev: Evaluator<'a, F>,
    config: &'a SolverConfig,
    options: RunOptions,
    trace: Vec<TraceRecord>,
    iterations: usize,
    inner_iterations: usize,
}

impl<F: Objective + ?Sized> Run<'_, F> {
    fn finish(self, solver: Solver, status: Status, x: Vec<f64>, f: f64, g: &[f64]) -> RunReport {
        RunReport {
            solver,
            status,
            iterations: self.iterations,
            inner_iterations: self.inner_iterations,
            counters: self.ev.counters(),
            final_f: f,
            final_residual: scaled_residual(g, &x),
            wall_time: 0.0,
            x,
            trace: self.trace,
        }
    }

    /// `Ok(())` on convergence, the stopping reason otherwise.
    fn should_stop(&self, state: &IterateState) -> Result<bool, SolveError> {
        match check_termination(&state.g, &state.x, self.ev.counters(), self.config)? {
            Termination::Continue => Ok(false),
            Termination::Converged => Ok(true),
            Termination::EvalBudgetExceeded => Err(SolveError::EvalBudgetExceeded),
        }
    }

    fn push_trace(&mut self, rec: TraceRecord) {
        if self.options.trace {
            self.trace.push(rec);
        }
    }

    fn wolfe_params(&self) -> WolfeParams {
        WolfeParams {
            c1: self.config.c1,
            c2: self.config.c2,
            alpha_init: 1.0,
            max_iters: self.config.max_ls_iters,
        }
    }

    /// Strong Wolfe search along `d` from `base` (where `f = phi0` and the
    /// slope is `dphi0`). Returns `(alpha, x_new, f_new, g_new)`.
    fn line_search(
        &mut self,
        base: &[f64],
        d: &[f64],
        phi0: f64,
        dphi0: f64,
    ) -> Result<(f64, Vec<f64>, f64, Vec<f64>), SolveError> {
        let n = base.len();
        let mut x = vec![0.0; n];
        let mut g = vec![0.0; n];
        let params = self.wolfe_params();
        let ev = &mut self.ev;
        let mut last_alpha = f64::NAN;
        let mut probe = |alpha: f64| {
            for i in 0..n {
                x[i] = base[i] + alpha * d[i];
            }
            last_alpha = alpha;
            let phi = ev.value_gradient(&x, &mut g)?;
            Ok((phi, dot(d, &g)))
        };
        let out = strong_wolfe_search(&mut probe, phi0, dphi0, params)?;
        debug_assert_eq!(out.alpha, last_alpha);
        Ok((out.alpha, x, out.phi, g))
    }

    fn lbfgs(&mut self, state: &mut IterateState) -> Result<(), SolveError> {
        loop {
            if self.should_stop(state)? {
                return Ok(());
            }
            let mut d = two_loop_direction(&state.history, &state.g, 0.0, state.scaling)?;
            let mut slope = dot(&state.g, &d);
            if !(slope < 0.0) {
                // Lost positive definiteness to rounding; restart from -g.
                state.history.clear();
                state.scaling = ScalingState::default();
                d = state.g.iter().map(|v| -v).collect();
                slope = dot(&state.g, &d);
            }
            let gnorm = norm(&state.g);
            let f_k = state.f;
            let (alpha, x_new, f_new, g_new) = self.line_search(&state.x, &d, state.f, slope)?;
            let s: Vec<f64> = d.iter().map(|v| alpha * v).collect();
            let y: Vec<f64> = g_new.iter().zip(&state.g).map(|(a, b)| a - b).collect();
            if dot(&s, &y) > 0.0 {
                state.record_pair(s, y, self.config.alpha_floor);
            }
            state.x = x_new;
            state.f = f_new;
            state.g = g_new;
            state.fwindow.push(f_new);
            self.iterations += 1;
            self.push_trace(TraceRecord {
                k: state.k,
                mu: 0.0,
                ratio: None,
                gnorm,
                alpha: Some(alpha),
                nf: self.ev.counters().n_f,
                f: f_k,
                f_ref: None,
                f_trial: None,
                model_red: None,
                f_next: f_new,
                inner: 0,
                line_search: LineSearchEvent::Accepted,
            });
            state.k += 1;
        }
    }

    fn regularized(
        &mut self,
        state: &mut IterateState,
        with_search: bool,
    ) -> Result<(), SolveError> {
        let cfg = self.config;
        loop {
            if self.should_stop(state)? {
                return Ok(());
            }
            debug_assert!(state.mu >= cfg.mu_min);
            let gnorm = norm(&state.g);
            let f_k = state.f;
            let step = accept_step_rlbfgs(state, cfg, &mut self.ev, self.options.monotone_ratio)?;
            self.inner_iterations += step.inner_iters;
            let mu_next = update_mu(step.mu_used, step.ratio, cfg);

            let mut g_trial = vec![0.0; state.x.len()];
            self.ev.gradient(&step.x_trial, &mut g_trial)?;

            let mut event = LineSearchEvent::NotTriggered;
            let mut alpha = None;
            let mut x_new = step.x_trial.clone();
            let mut f_new = step.f_trial;
            let mut g_new = g_trial;
            let mut s = step.d.clone();

            if with_search {
                let slope_trial = dot(&step.d, &g_new);
                let slope_k = dot(&step.d, &state.g);
                if slope_trial < cfg.c2 * slope_k && step.mu_used == cfg.mu_min {
                    match self.line_search(&step.x_trial, &step.d, step.f_trial, slope_trial) {
                        Ok((a, x_ls, f_ls, g_ls)) => {
                            event = LineSearchEvent::Accepted;
                            alpha = Some(a);
                            x_new = x_ls;
                            f_new = f_ls;
                            g_new = g_ls;
                            s = step.d.iter().map(|v| (1.0 + a) * v).collect();
                        }
                        Err(SolveError::EvalBudgetExceeded) => {
                            return Err(SolveError::EvalBudgetExceeded)
                        }
                        Err(_) => event = LineSearchEvent::FellBack,
                    }
                }
            }

            let y: Vec<f64> = g_new.iter().zip(&state.g).map(|(a, b)| a - b).collect();
            state.record_pair(s, y, cfg.alpha_floor);
            state.x = x_new;
            state.f = f_new;
            state.g = g_new;
            state.mu = mu_next;
            state.fwindow.push(f_new);
            self.iterations += 1;
            self.push_trace(TraceRecord {
                k: state.k,
                mu: step.mu_used,
                ratio: Some(step.ratio),
                gnorm,
                alpha,
                nf: self.ev.counters().n_f,
                f: f_k,
                f_ref: Some(step.f_ref),
                f_trial: Some(step.f_trial),
                model_red: Some(step.model_red),
                f_next: f_new,
                inner: step.inner_iters,
                line_search: event,
            });
            state.k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct HalfSquare(usize);

    impl Objective for HalfSquare {
        fn dimension(&self) -> usize {
            self.0
        }
        fn value(&self, x: &[f64]) -> f64 {
            0.5 * dot(x, x)
        }
        fn gradient(&self, x: &[f64], g: &mut [f64]) {
            g.copy_from_slice(x);
        }
    }

    #[test]
    fn update_mu_branches() {
        let c = SolverConfig::default();
        assert_eq!(update_mu(2.0, 0.5, &c), 2.0);
        assert!((update_mu(2.0, 0.95, &c) - 0.2).abs() < 1e-16);
        assert_eq!(update_mu(0.005, 0.95, &c), 1e-3);
        assert_eq!(update_mu(3.0, 0.9, &c), 0.30000000000000004_f64.max(1e-3));
    }

    #[test]
    fn solver_names_round_trip() {
        for s in Solver::ALL {
            assert_eq!(s.name().parse::<Solver>(), Ok(s));
        }
        assert!("bfgs".parse::<Solver>().is_err());
        for s in Status::ALL {
            assert_eq!(s.name().parse::<Status>(), Ok(s));
        }
    }

    #[test]
    fn stationary_start_converges_immediately() {
        let cfg = SolverConfig::default();
        for solver in Solver::ALL {
            let r = solve(solver, &HalfSquare(3), &[0.0; 3], &cfg).unwrap();
            assert_eq!(r.status, Status::Converged);
            assert_eq!(r.iterations, 0);
            assert_eq!(r.counters, EvalCounter { n_f: 1, n_g: 1 });
        }
    }

    #[test]
    fn lbfgs_on_sphere_takes_one_step() {
        let cfg = SolverConfig::default();
        let r = solve_lbfgs(&HalfSquare(4), &[1.0, -2.0, 3.0, 0.5], &cfg).unwrap();
        assert_eq!(r.status, Status::Converged);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.x, vec![0.0; 4]);
    }

    #[test]
    fn setup_errors() {
        let cfg = SolverConfig::default();
        assert_eq!(
            solve_rlbfgs(&HalfSquare(2), &[1.0], &cfg),
            Err(SetupError::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
        let bad = SolverConfig { eta1: 2.0, ..cfg };
        assert!(matches!(
            solve_rlbfgs(&HalfSquare(1), &[1.0], &bad),
            Err(SetupError::InvalidConfig(_))
        ));
    }
}
