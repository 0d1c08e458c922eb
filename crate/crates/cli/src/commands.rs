//! The `gen`, `solve` and `bench` subcommands.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::Serialize;
use sha2::{Digest, Sha256};

use lsap_core::{
    generate_geom, hungarian_solve, read_instance, relative_gap, write_instance, GeomParams,
    Instance,
};

use crate::campaign::{format_summary, run_campaign, summarize, CampaignSpec};
use crate::engine::{Engine, RunOptions};
use crate::record::{write_records, Outcome};

/// Writes a GEOM instance to `out` and returns the SHA-256 of the file.
pub fn gen(params: &GeomParams, out: &Path) -> anyhow::Result<String> {
    let inst = generate_geom(params)?;
    let mut bytes = Vec::new();
    write_instance(&inst, &mut bytes)?;
    std::fs::write(out, &bytes).with_context(|| format!("writing {}", out.display()))?;
    Ok(hex(&Sha256::digest(&bytes)))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub enum InstanceSource {
    File(PathBuf),
    Geom(GeomParams),
}

impl InstanceSource {
    pub fn load(&self) -> anyhow::Result<Instance> {
        match self {
            InstanceSource::File(path) => {
                let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
                read_instance(BufReader::new(f))
                    .with_context(|| format!("reading {}", path.display()))
            }
            InstanceSource::Geom(params) => Ok(generate_geom(params)?),
        }
    }
}

/// Parses `n,bound,seed`.
pub fn parse_geom_triple(s: &str) -> anyhow::Result<GeomParams> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [n, bound, seed] = parts[..] else {
        bail!("expected n,bound,seed, got {s:?}");
    };
    Ok(GeomParams::new(n.parse()?, bound.parse()?, seed.parse()?)?)
}

#[derive(Debug, Serialize)]
pub struct SolveOutput {
    pub engine: String,
    pub n: usize,
    pub seed: u64,
    pub objective: f64,
    pub elapsed_ms: f64,
    pub iterations: u64,
    pub switches: u64,
    pub terminated_by: String,
    pub completed_greedily: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
}

pub fn solve(
    engine: Engine,
    inst: &Instance,
    opts: &RunOptions,
    oracle: bool,
) -> anyhow::Result<SolveOutput> {
    let rep = engine.run(inst, opts)?;
    let optimal = if oracle {
        Some(hungarian_solve(inst)?.objective())
    } else {
        None
    };
    Ok(SolveOutput {
        engine: engine.to_string(),
        n: inst.n(),
        seed: opts.seed,
        objective: rep.objective(),
        elapsed_ms: rep.elapsed.as_secs_f64() * 1e3,
        iterations: rep.outer_iterations,
        switches: rep.switches_applied,
        terminated_by: rep.terminated_by.to_string(),
        completed_greedily: rep.completed_greedily,
        gap: optimal.map(|opt| relative_gap(opt, rep.objective())),
        optimal,
    })
}

/// Runs a campaign, writes the CSV to `out` (stdout if `None`) and the
/// summary to stderr. Returns the number of failed cells.
pub fn bench(
    spec: &CampaignSpec,
    opts: &RunOptions,
    parallel_cells: usize,
    out: Option<&Path>,
) -> anyhow::Result<usize> {
    let records = run_campaign(spec, opts, parallel_cells)?;
    match out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_records(&records, BufWriter::new(f))?;
        }
        None => write_records(&records, std::io::stdout().lock())?,
    }
    let summary = format_summary(&summarize(&records), parallel_cells > 1);
    std::io::stderr().write_all(summary.as_bytes())?;
    Ok(records
        .iter()
        .filter(|r| r.terminated_by == Outcome::Error)
        .count())
}
