//! Solver parameters and the stopping rule.

use core::fmt;

use crate::error::SolveError;
use crate::linalg::{all_finite, norm};
use crate::objective::EvalCounter;

/// Every tunable of the three solvers.
///
/// Defaults follow the published experiments: `eta1 = 0.01`, `eta2 = 0.9`,
/// `mu_min = 1e-3`, `m = 5`, `gamma1 = 0.1`, `gamma2 = 10`, `M = 10`, gradient
/// tolerance `1e-5` and a budget of 10000 function evaluations. `mu0`,
/// `mu_max`, the Wolfe constants and the line search guards are ours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Regularization at the first iteration.
    pub mu0: f64,
    /// Floor for `mu` between outer iterations.
    pub mu_min: f64,
    /// Shrink factor applied after a very successful step.
    pub gamma1: f64,
    /// Growth factor applied to `mu` when a trial is rejected.
    pub gamma2: f64,
    /// Acceptance threshold on the ratio.
    pub eta1: f64,
    /// "Very successful" threshold on the ratio.
    pub eta2: f64,
    /// Number of stored curvature pairs.
    pub memory: usize,
    /// Nonmonotone window; 0 is the monotone ratio.
    pub nonmonotone: usize,
    pub c1: f64,
    pub c2: f64,
    pub grad_tol: f64,
    pub max_fevals: usize,
    /// The inner loop gives up once `mu` grows past this.
    pub mu_max: f64,
    /// Lower bound on `s'y / |s|^2` before the scaling falls back.
    pub alpha_floor: f64,
    pub max_ls_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mu0: 1.0,
            mu_min: 1e-3,
            gamma1: 0.1,
            gamma2: 10.0,
            eta1: 0.01,
            eta2: 0.9,
            memory: 5,
            nonmonotone: 10,
            c1: 1e-4,
            c2: 0.9,
            grad_tol: 1e-5,
            max_fevals: 10_000,
            mu_max: 1e15,
            alpha_floor: 1e-8,
            max_ls_iters: 20,
        }
    }
}

/// A violated parameter constraint; the payload names the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfigError(pub &'static str);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid solver parameter: {}", self.0)
    }
}

impl core::error::Error for ConfigError {}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let finite = [
            self.mu0,
            self.mu_min,
            self.gamma1,
            self.gamma2,
            self.eta1,
            self.eta2,
            self.c1,
            self.c2,
            self.grad_tol,
            self.mu_max,
            self.alpha_floor,
        ];
        if !all_finite(&finite) {
            return Err(ConfigError("all real parameters must be finite"));
        }
        if !(self.mu_min > 0.0 && self.mu_min <= self.mu0) {
            return Err(ConfigError("need 0 < mu_min <= mu0"));
        }
        if !(self.gamma1 > 0.0 && self.gamma1 <= 1.0) {
            return Err(ConfigError("need 0 < gamma1 <= 1"));
        }
        if !(self.gamma2 > 1.0) {
            return Err(ConfigError("need gamma2 > 1"));
        }
        if !(self.eta1 > 0.0 && self.eta1 < self.eta2 && self.eta2 <= 1.0) {
            return Err(ConfigError("need 0 < eta1 < eta2 <= 1"));
        }
        if self.memory == 0 {
            return Err(ConfigError("memory must be positive"));
        }
        if !(self.c1 > 0.0 && self.c1 < self.c2 && self.c2 < 1.0) {
            return Err(ConfigError("need 0 < c1 < c2 < 1"));
        }
        if !(self.grad_tol > 0.0) {
            return Err(ConfigError("grad_tol must be positive"));
        }
        if self.max_fevals == 0 {
            return Err(ConfigError("max_fevals must be positive"));
        }
        if !(self.mu_max >= self.mu0) {
            return Err(ConfigError("need mu_max >= mu0"));
        }
        if !(self.alpha_floor > 0.0) {
            return Err(ConfigError("alpha_floor must be positive"));
        }
        if self.max_ls_iters == 0 {
            return Err(ConfigError("max_ls_iters must be positive"));
        }
        Ok(())
    }
}

/// Outcome of the stopping test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Continue,
    Converged,
    EvalBudgetExceeded,
}

/// `|g| / max(1, |x|)`, the scaled residual used by the stopping test.
pub fn scaled_residual(gradient: &[f64], point: &[f64]) -> f64 {
    norm(gradient) / norm(point).max(1.0)
}

/// Stop on `|g| / max(1, |x|) < grad_tol`, else on `n_f > max_fevals`.
///
/// Convergence is tested first, so a run that converges on its last allowed
/// evaluation is a success.
pub fn check_termination(
    gradient: &[f64],
    point: &[f64],
    counters: EvalCounter,
    config: &SolverConfig,
) -> Result<Termination, SolveError> {
    assert_eq!(gradient.len(), point.len());
    if !all_finite(gradient) {
        return Err(SolveError::NumericalBreakdown);
    }
    if scaled_residual(gradient, point) < config.grad_tol {
        Ok(Termination::Converged)
    } else if counters.n_f > config.max_fevals {
        Ok(Termination::EvalBudgetExceeded)
    } else {
        Ok(Termination::Continue)
    }
}
