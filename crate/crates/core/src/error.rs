use core::fmt;

/// Reasons a run stops before reaching the gradient tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveError {
    /// More than `max_fevals` objective evaluations were spent.
    EvalBudgetExceeded,
    /// The inner loop pushed `mu` past `mu_max`.
    RegularizationOverflow,
    /// The strong Wolfe search could not find an acceptable step.
    LineSearchFailure,
    /// A NaN/Inf showed up where a finite value was required.
    NumericalBreakdown,
    /// `-g'd / 2` was not positive for a nonzero gradient.
    NonpositiveModelReduction,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            SolveError::EvalBudgetExceeded => "function evaluation budget exceeded",
            SolveError::RegularizationOverflow => "regularization parameter exceeded mu_max",
            SolveError::LineSearchFailure => "strong Wolfe line search failed",
            SolveError::NumericalBreakdown => "non-finite value encountered",
            SolveError::NonpositiveModelReduction => "model reduction is not positive",
        };
        f.write_str(msg)
    }
}

impl core::error::Error for SolveError {}

/// Problems with the inputs of a run, detected before any evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetupError {
    InvalidConfig(crate::config::ConfigError),
    /// `x0.len()` differs from the objective dimension.
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for SetupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetupError::InvalidConfig(e) => e.fmt(f),
            SetupError::DimensionMismatch { expected, got } => {
                write!(
                    f,
                    "starting point has dimension {got}, objective expects {expected}"
                )
            }
        }
    }
}

impl core::error::Error for SetupError {}

impl From<crate::config::ConfigError> for SetupError {
    fn from(e: crate::config::ConfigError) -> Self {
        SetupError::InvalidConfig(e)
    }
}
