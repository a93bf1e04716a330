//! Objective functions and evaluation accounting.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::SolveError;
use crate::linalg::all_finite;

/// A smooth function `f: R^n -> R` with an analytic gradient.
///
/// Implementations must be deterministic: the same point always yields the
/// same value and gradient.
pub trait Objective {
    fn dimension(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    /// Writes `grad f(x)` into `grad` (length `dimension()`).
    fn gradient(&self, x: &[f64], grad: &mut [f64]);

    /// Value and gradient together. Override when they share work.
    fn value_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        self.gradient(x, grad);
        self.value(x)
    }
}

impl<T: Objective + ?Sized> Objective for &T {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }
    fn value(&self, x: &[f64]) -> f64 {
        (**self).value(x)
    }
    fn gradient(&self, x: &[f64], grad: &mut [f64]) {
        (**self).gradient(x, grad)
    }
    fn value_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        (**self).value_gradient(x, grad)
    }
}

/// Number of objective (`n_f`) and gradient (`n_g`) evaluations in a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCounter {
    pub n_f: usize,
    pub n_g: usize,
}

/// What to compute in [`evaluate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Request {
    Value,
    Gradient,
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: Option<f64>,
    pub gradient: Option<Vec<f64>>,
}

/// Evaluates `objective` at `x`, bumping the matching counters once each.
pub fn evaluate<F: Objective + ?Sized>(
    objective: &F,
    x: &[f64],
    counters: &mut EvalCounter,
    what: Request,
) -> Result<Evaluation, SolveError> {
    assert_eq!(x.len(), objective.dimension(), "point has wrong dimension");
    let mut out = Evaluation {
        value: None,
        gradient: None,
    };
    match what {
        Request::Value => {
            counters.n_f += 1;
            out.value = Some(objective.value(x));
        }
        Request::Gradient => {
            counters.n_g += 1;
            let mut g = vec![0.0; x.len()];
            objective.gradient(x, &mut g);
            out.gradient = Some(g);
        }
        Request::Both => {
            counters.n_f += 1;
            counters.n_g += 1;
            let mut g = vec![0.0; x.len()];
            out.value = Some(objective.value_gradient(x, &mut g));
            out.gradient = Some(g);
        }
    }
    let finite =
        out.value.is_none_or(f64::is_finite) && out.gradient.as_deref().is_none_or(all_finite);
    if finite {
        Ok(out)
    } else {
        Err(SolveError::NumericalBreakdown)
    }
}

/// Counting front-end used by the solvers.
///
/// Every call is forwarded to the objective exactly once. Once `n_f` exceeds
/// the budget the call that crossed it returns
/// [`SolveError::EvalBudgetExceeded`].
pub struct Evaluator<'a, F: ?Sized> {
    objective: &'a F,
    counters: EvalCounter,
    max_fevals: usize,
}

impl<'a, F: Objective + ?Sized> Evaluator<'a, F> {
    pub fn new(objective: &'a F, max_fevals: usize) -> Self {
        Evaluator {
            objective,
            counters: EvalCounter::default(),
            max_fevals,
        }
    }

    pub fn counters(&self) -> EvalCounter {
        self.counters
    }

    pub fn dimension(&self) -> usize {
        self.objective.dimension()
    }

    fn check_budget(&self) -> Result<(), SolveError> {
        if self.counters.n_f > self.max_fevals {
            Err(SolveError::EvalBudgetExceeded)
        } else {
            Ok(())
        }
    }

    /// Strict objective value: any non-finite result is a breakdown.
    pub fn value(&mut self, x: &[f64]) -> Result<f64, SolveError> {
        self.counters.n_f += 1;
        let f = self.objective.value(x);
        self.check_budget()?;
        if f.is_finite() {
            Ok(f)
        } else {
            Err(SolveError::NumericalBreakdown)
        }
    }

    /// Objective value at a trial point of the regularized inner loop.
    ///
    /// `+inf` is passed through so the ratio test can reject it; NaN and
    /// `-inf` are breakdowns.
    pub fn trial_value(&mut self, x: &[f64]) -> Result<f64, SolveError> {
        self.counters.n_f += 1;
        let f = self.objective.value(x);
        self.check_budget()?;
        if f.is_finite() || f == f64::INFINITY {
            Ok(f)
        } else {
            Err(SolveError::NumericalBreakdown)
        }
    }

    pub fn gradient(&mut self, x: &[f64], grad: &mut [f64]) -> Result<(), SolveError> {
        self.counters.n_g += 1;
        self.objective.gradient(x, grad);
        if all_finite(grad) {
            Ok(())
        } else {
            Err(SolveError::NumericalBreakdown)
        }
    }

    pub fn value_gradient(&mut self, x: &[f64], grad: &mut [f64]) -> Result<f64, SolveError> {
        self.counters.n_f += 1;
        self.counters.n_g += 1;
        let f = self.objective.value_gradient(x, grad);
        self.check_budget()?;
        if f.is_finite() && all_finite(grad) {
            Ok(f)
        } else {
            Err(SolveError::NumericalBreakdown)
        }
    }
}
