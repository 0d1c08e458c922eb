//! One CSV row per solver run.
//!
//! Columns, in order:
//! `engine,n,instance_seed,run_seed,objective,optimal,gap,elapsed_ms,iterations,terminated_by`.
//! `optimal` and `gap` are empty unless an oracle was requested; `objective`
//! is empty and `terminated_by` is `error` when the engine failed.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str =
    "engine,n,instance_seed,run_seed,objective,optimal,gap,elapsed_ms,iterations,terminated_by";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Converged,
    Deadline,
    Error,
}

impl From<lsap_core::TerminatedBy> for Outcome {
    fn from(t: lsap_core::TerminatedBy) -> Self {
        match t {
            lsap_core::TerminatedBy::Converged => Outcome::Converged,
            lsap_core::TerminatedBy::Deadline => Outcome::Deadline,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub engine: String,
    pub n: usize,
    pub instance_seed: u64,
    pub run_seed: u64,
    pub objective: Option<f64>,
    pub optimal: Option<f64>,
    /// `(optimal - objective) / optimal`.
    pub gap: Option<f64>,
    pub elapsed_ms: f64,
    pub iterations: u64,
    pub terminated_by: Outcome,
}

pub fn write_records<W: Write>(records: &[BenchRecord], sink: W) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(source: R) -> anyhow::Result<Vec<BenchRecord>> {
    let mut r = csv::Reader::from_reader(source);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    anyhow::ensure!(
        header.join(",") == CSV_HEADER,
        "unexpected CSV header {:?}",
        header.join(",")
    );
    r.deserialize()
        .map(|row| row.map_err(anyhow::Error::from))
        .collect()
}
