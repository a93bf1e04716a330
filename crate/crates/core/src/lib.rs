//! Regularized limited-memory BFGS.
//!
//! This crate contains the numerical side of `regulus`: a baseline L-BFGS
//! driver with a strong Wolfe line search, the regularized variant that
//! replaces the step length by a shift `mu` on the curvature pairs, and the
//! regularized variant that falls back to a line search when the unit
//! regularized step is too short.
//!
//! Everything here is `no_std` (with `alloc`). Timing, file formats and the
//! command line live in the `regulus` crate.
//!
//! ```
//! use regulus_core::{problems, solve, Solver, SolverConfig, Status};
//!
//! let p = problems::lookup("rosenbrock:2").unwrap();
//! let report = solve(Solver::Rlbfgs, &p, &p.x0, &SolverConfig::default()).unwrap();
//! assert_eq!(report.status, Status::Converged);
//! ```
#![no_std]
// `!(a < b)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod config;
pub mod curvature;
pub mod direction;
pub mod error;
pub mod linalg;
pub mod linesearch;
pub mod objective;
pub mod problems;
pub mod solvers;
pub mod step_control;

pub use config::{check_termination, ConfigError, SolverConfig, Termination};
pub use curvature::{CurvaturePair, PairHistory};
pub use direction::{gamma_scale, initial_diag, two_loop_direction, ScalingState};
pub use error::SolveError;
pub use objective::{EvalCounter, Evaluator, Objective, Request};
pub use solvers::{
    solve, solve_lbfgs, solve_rlbfgs, solve_rlbfgs_sw, solve_with, RunOptions, RunReport, Solver,
    Status, TraceRecord,
};
