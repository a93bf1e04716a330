//! Dolan–Moré performance profiles.
//!
//! For a problem set `P` and solver `s`, `F_s(tau)` is the fraction of
//! problems on which `t_{p,s} <= tau * t*_p`, with `t*_p` the best metric
//! over all solvers. By default `P` holds only the problems every solver
//! converged on.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::Serialize;

use crate::records::RunRecord;
use crate::{HarnessError, Result};

pub const DEFAULT_TAU_GRID: [f64; 9] = [1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 8.0, 13.0, 21.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Nf,
    Time,
}

impl Metric {
    fn of(self, r: &RunRecord) -> f64 {
        match self {
            Metric::Nf => r.n_f as f64,
            Metric::Time => r.wall_time,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    pub solver: String,
    /// `(tau, F)` pairs in grid order.
    pub points: Vec<(f64, f64)>,
}

/// Profiles `records`. Solvers are every solver name present in the
/// records, in lexicographic order. With `union`, the problem set is every
/// problem solved by at least one solver and failed (or missing) runs count
/// as `t = inf`.
pub fn performance_profile(
    records: &[RunRecord],
    metric: Metric,
    tau_grid: &[f64],
    union: bool,
) -> Result<Vec<ProfileCurve>> {
    let solvers: BTreeSet<&str> = records.iter().map(|r| r.solver.as_str()).collect();
    // problem -> solver -> metric (inf when the run failed)
    let mut table: BTreeMap<&str, BTreeMap<&str, f64>> = BTreeMap::new();
    for r in records {
        let t = if r.status.is_success() {
            metric.of(r)
        } else {
            f64::INFINITY
        };
        table
            .entry(r.problem.as_str())
            .or_default()
            .insert(r.solver.as_str(), t);
    }

    let times = |row: &BTreeMap<&str, f64>| -> Vec<f64> {
        solvers
            .iter()
            .map(|s| row.get(s).copied().unwrap_or(f64::INFINITY))
            .collect()
    };
    let rows: Vec<Vec<f64>> = table
        .values()
        .map(times)
        .filter(|ts| {
            if union {
                ts.iter().any(|t| t.is_finite())
            } else {
                ts.iter().all(|t| t.is_finite())
            }
        })
        .collect();
    if rows.is_empty() {
        return Err(HarnessError::EmptyIntersection);
    }

    // ratios[p][s] = t_{p,s} / t*_p
    let ratios: Vec<Vec<f64>> = rows
        .iter()
        .map(|ts| {
            let best = ts.iter().copied().fold(f64::INFINITY, f64::min);
            ts.iter().map(|&t| ratio(t, best)).collect()
        })
        .collect();

    let np = rows.len() as f64;
    Ok(solvers
        .iter()
        .enumerate()
        .map(|(j, s)| ProfileCurve {
            solver: s.to_string(),
            points: tau_grid
                .iter()
                .map(|&tau| {
                    let hits = ratios.iter().filter(|r| r[j] <= tau).count();
                    (tau, hits as f64 / np)
                })
                .collect(),
        })
        .collect())
}

// A zero best time (timer resolution) only ties with another zero.
fn ratio(t: f64, best: f64) -> f64 {
    if t == best {
        1.0
    } else if best > 0.0 {
        t / best
    } else {
        f64::INFINITY
    }
}

/// Checks that `F` is nondecreasing along a sorted grid and stays in [0, 1].
pub fn is_valid_curve(c: &ProfileCurve) -> bool {
    c.points.iter().all(|&(_, f)| (0.0..=1.0).contains(&f))
        && c.points
            .windows(2)
            .all(|w| w[0].0 > w[1].0 || w[0].1 <= w[1].1)
}

#[derive(Serialize)]
struct Row<'a> {
    solver: &'a str,
    tau: f64,
    #[serde(rename = "F")]
    f: f64,
}

/// Long format: one `solver,tau,F` row per grid point.
pub fn write_profile<W: Write>(w: W, curves: &[ProfileCurve]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for c in curves {
        for &(tau, f) in &c.points {
            wtr.serialize(Row {
                solver: &c.solver,
                tau,
                f,
            })?;
        }
    }
    wtr.flush()?;
    Ok(())
}

/// Sorts and deduplicates a user grid; every value must be >= 1.
pub fn normalize_grid(grid: &[f64]) -> Result<Vec<f64>> {
    if grid.is_empty() || grid.iter().any(|t| !(*t >= 1.0) || !t.is_finite()) {
        return Err(HarnessError::Config(
            "tau values must be finite and >= 1".into(),
        ));
    }
    let mut g = grid.to_vec();
    g.sort_by(f64::total_cmp);
    g.dedup();
    Ok(g)
}
