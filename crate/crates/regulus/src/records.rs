//! One CSV row per (problem, solver) run.

use std::io::{Read, Write};
use std::path::Path;

use regulus_core::{RunReport, Status};
use serde::{Deserialize, Serialize};

use crate::{HarnessError, Result};

/// Fields are written in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    pub solver: String,
    #[serde(with = "status_name")]
    pub status: Status,
    pub n_f: usize,
    pub n_g: usize,
    pub iterations: usize,
    pub wall_time: f64,
    pub final_residual: f64,
}

impl RunRecord {
    pub fn from_report(problem: &str, report: &RunReport) -> Self {
        RunRecord {
            problem: problem.to_string(),
            solver: report.solver_name().to_string(),
            status: report.status,
            n_f: report.counters.n_f,
            n_g: report.counters.n_g,
            iterations: report.iterations,
            wall_time: report.wall_time,
            final_residual: report.final_residual,
        }
    }

    /// The record with `wall_time` zeroed, for determinism comparisons.
    pub fn untimed(&self) -> Self {
        RunRecord {
            wall_time: 0.0,
            ..self.clone()
        }
    }
}

mod status_name {
    use regulus_core::Status;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: &Status, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(s.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Status, D::Error> {
        let s = String::deserialize(de)?;
        s.parse()
            .map_err(|_| D::Error::custom(format!("unknown status '{s}'")))
    }
}

pub fn write_records<W: Write>(w: W, records: &[RunRecord]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for r in records {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(r: R) -> Result<Vec<RunRecord>> {
    let mut rdr = csv::Reader::from_reader(r);
    rdr.deserialize()
        .map(|row| row.map_err(HarnessError::from))
        .collect()
}

pub fn save(path: &Path, records: &[RunRecord]) -> Result<()> {
    write_records(std::fs::File::create(path)?, records)
}

pub fn load(path: &Path) -> Result<Vec<RunRecord>> {
    read_records(std::fs::File::open(path)?)
}
