//! Per-iteration traces as JSON lines.

use std::io::Write;

use regulus_core::TraceRecord;
use serde::{Deserialize, Serialize};

use crate::Result;

/// The subset of a trace record that goes to disk. Missing values (no
/// ratio for L-BFGS, no step length when no line search ran) are `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceLine {
    pub k: usize,
    pub mu: f64,
    pub ratio: Option<f64>,
    pub gnorm: f64,
    pub alpha: Option<f64>,
    pub nf: usize,
}

impl From<&TraceRecord> for TraceLine {
    fn from(t: &TraceRecord) -> Self {
        TraceLine {
            k: t.k,
            mu: t.mu,
            ratio: t.ratio,
            gnorm: t.gnorm,
            alpha: t.alpha,
            nf: t.nf,
        }
    }
}

pub fn write_trace<W: Write>(mut w: W, trace: &[TraceRecord]) -> Result<()> {
    for t in trace {
        serde_json::to_writer(&mut w, &TraceLine::from(t))?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use regulus_core::{problems, solve_with, RunOptions, Solver, SolverConfig};

    #[test]
    fn one_object_per_line_with_fixed_keys() {
        let p = problems::lookup("rosenbrock:2").unwrap();
        for solver in Solver::ALL {
            let rep = solve_with(
                solver,
                &p,
                &p.x0,
                &SolverConfig::default(),
                RunOptions::traced(),
            )
            .unwrap();
            let mut buf = Vec::new();
            write_trace(&mut buf, &rep.trace).unwrap();
            let text = String::from_utf8(buf).unwrap();
            assert_eq!(text.lines().count(), rep.trace.len());
            for (line, rec) in text.lines().zip(&rep.trace) {
                let v: serde_json::Value = serde_json::from_str(line).unwrap();
                let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
                assert_eq!(keys.len(), 6);
                for k in ["k", "mu", "ratio", "gnorm", "alpha", "nf"] {
                    assert!(keys.iter().any(|x| x == k), "{k} missing");
                }
                let back: TraceLine = serde_json::from_str(line).unwrap();
                assert_eq!(back, TraceLine::from(rec));
            }
        }
    }
}
