//! Benchmark harness for `regulus-core`.
//!
//! Runs solver x problem batches, stores the results as CSV, computes
//! performance profiles and writes per-iteration traces as JSON lines.
//! The `regulus` binary is a thin command-line front end over this crate.

// `!(a < b)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod batch;
pub mod cli;
pub mod config_file;
pub mod profile;
pub mod records;
pub mod trace;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Problem(#[from] regulus_core::problems::ProblemError),
    #[error("{0}")]
    Setup(#[from] regulus_core::error::SetupError),
    #[error("config: {0}")]
    Config(String),
    #[error("no problem is solved by every solver")]
    EmptyIntersection,
    #[error("records: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
