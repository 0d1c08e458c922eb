//! Benchmark campaigns: every engine on every generated instance, repeated
//! with different seeds.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use anyhow::{bail, Context};
use rayon::prelude::*;

use lsap_core::rng::derive_seed;
use lsap_core::{generate_geom, hungarian_solve, relative_gap, GeomParams, Instance};

use crate::engine::{Engine, RunOptions};
use crate::record::{BenchRecord, Outcome};

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignSpec {
    pub sizes: Vec<usize>,
    pub instances_per_size: usize,
    pub bound: f64,
    pub base_seed: u64,
    pub engines: Vec<Engine>,
    pub repetitions: usize,
    pub deadline: Option<Duration>,
    /// Solve each instance exactly and fill `optimal`/`gap`.
    pub oracle: bool,
}

impl Default for CampaignSpec {
    fn default() -> Self {
        CampaignSpec {
            sizes: vec![64],
            instances_per_size: 1,
            bound: 100.0,
            base_seed: 1,
            engines: vec![Engine::DgsSeq],
            repetitions: 1,
            deadline: None,
            oracle: false,
        }
    }
}

impl CampaignSpec {
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            bail!("sizes must be a non-empty list of positive integers");
        }
        if self.instances_per_size == 0 || self.repetitions == 0 {
            bail!("instances and repetitions must be at least 1");
        }
        if self.engines.is_empty() {
            bail!("at least one engine is required");
        }
        if !(self.bound.is_finite() && self.bound > 0.0) {
            bail!("bound must be positive");
        }
        Ok(())
    }

    /// Applies `key=value` lines. Blank lines and `#` comments are skipped.
    ///
    /// Keys: `sizes`, `instances`, `reps`, `bound`, `base_seed`, `engines`,
    /// `deadline_ms`, `oracle`.
    pub fn apply_spec_text(&mut self, text: &str) -> anyhow::Result<()> {
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key=value", k + 1))?;
            self.set(key.trim(), value.trim())
                .with_context(|| format!("line {}", k + 1))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> anyhow::Result<()> {
        match key {
            "sizes" => self.sizes = parse_list(value)?,
            "instances" | "instances_per_size" => self.instances_per_size = value.parse()?,
            "reps" | "repetitions" => self.repetitions = value.parse()?,
            "bound" => self.bound = value.parse()?,
            "base_seed" => self.base_seed = value.parse()?,
            "engines" => {
                self.engines = value
                    .split(',')
                    .map(|e| e.parse::<Engine>().map_err(anyhow::Error::msg))
                    .collect::<anyhow::Result<_>>()?
            }
            "deadline_ms" => {
                self.deadline = if value.is_empty() || value == "none" {
                    None
                } else {
                    Some(Duration::from_millis(value.parse()?))
                }
            }
            "oracle" => {
                self.oracle = match value {
                    "hungarian" | "true" | "yes" => true,
                    "none" | "false" | "no" | "" => false,
                    other => bail!("unknown oracle {other:?}"),
                }
            }
            other => bail!("unknown key {other:?}"),
        }
        Ok(())
    }
}

pub fn parse_list<T: std::str::FromStr>(value: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    value
        .split(',')
        .map(|v| v.trim().parse::<T>().map_err(anyhow::Error::from))
        .collect()
}

/// Seed of the `index`-th instance of size `n`.
pub fn instance_seed(base: u64, n: usize, index: usize) -> u64 {
    derive_seed(base, &[n as u64, index as u64])
}

/// Seed of repetition `rep` on that instance; shared by all engines.
pub fn run_seed(base: u64, n: usize, index: usize, rep: usize) -> u64 {
    derive_seed(base, &[n as u64, index as u64, rep as u64])
}

struct Cell<'a> {
    engine: Engine,
    n: usize,
    instance: &'a Instance,
    instance_seed: u64,
    run_seed: u64,
    optimal: Option<f64>,
}

/// Runs the full cross product. Rows come out ordered by size, instance,
/// engine, repetition regardless of `parallel_cells`.
pub fn run_campaign(
    spec: &CampaignSpec,
    base_opts: &RunOptions,
    parallel_cells: usize,
) -> anyhow::Result<Vec<BenchRecord>> {
    spec.validate()?;
    let mut instances = Vec::new();
    for &n in &spec.sizes {
        for index in 0..spec.instances_per_size {
            let seed = instance_seed(spec.base_seed, n, index);
            let inst = generate_geom(&GeomParams::new(n, spec.bound, seed)?)?;
            let optimal = if spec.oracle {
                Some(hungarian_solve(&inst)?.objective())
            } else {
                None
            };
            instances.push((n, index, seed, inst, optimal));
        }
    }

    let mut cells = Vec::new();
    for (n, index, seed, inst, optimal) in &instances {
        for &engine in &spec.engines {
            for rep in 0..spec.repetitions {
                cells.push(Cell {
                    engine,
                    n: *n,
                    instance: inst,
                    instance_seed: *seed,
                    run_seed: run_seed(spec.base_seed, *n, *index, rep),
                    optimal: *optimal,
                });
            }
        }
    }

    let run_cell = |cell: &Cell| -> BenchRecord {
        let opts = RunOptions {
            seed: cell.run_seed,
            deadline: spec.deadline,
            ..*base_opts
        };
        let mut record = BenchRecord {
            engine: cell.engine.to_string(),
            n: cell.n,
            instance_seed: cell.instance_seed,
            run_seed: cell.run_seed,
            objective: None,
            optimal: cell.optimal,
            gap: None,
            elapsed_ms: 0.0,
            iterations: 0,
            terminated_by: Outcome::Error,
        };
        match cell.engine.run(cell.instance, &opts) {
            Ok(rep) => {
                record.objective = Some(rep.objective());
                record.gap = cell.optimal.map(|opt| relative_gap(opt, rep.objective()));
                record.elapsed_ms = rep.elapsed.as_secs_f64() * 1e3;
                record.iterations = rep.outer_iterations;
                record.terminated_by = rep.terminated_by.into();
            }
            Err(e) => eprintln!(
                "{} n={} run_seed={}: {e}",
                cell.engine, cell.n, cell.run_seed
            ),
        }
        record
    };

    if parallel_cells > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallel_cells)
            .build()?;
        Ok(pool.install(|| cells.par_iter().map(run_cell).collect()))
    } else {
        Ok(cells.iter().map(run_cell).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub engine: String,
    pub n: usize,
    pub runs: usize,
    pub errors: usize,
    pub mean_objective: f64,
    pub sd_objective: f64,
    pub mean_elapsed_ms: f64,
    pub sd_elapsed_ms: f64,
    pub mean_gap: Option<f64>,
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    (mean, var.sqrt())
}

/// Per-(engine, n) statistics, in order of first appearance.
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut order = Vec::new();
    let mut groups: BTreeMap<(String, usize), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        let key = (r.engine.clone(), r.n);
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let rows = &groups[&key];
            let ok: Vec<&&BenchRecord> = rows
                .iter()
                .filter(|r| r.terminated_by != Outcome::Error)
                .collect();
            let objectives: Vec<f64> = ok.iter().filter_map(|r| r.objective).collect();
            let times: Vec<f64> = ok.iter().map(|r| r.elapsed_ms).collect();
            let gaps: Vec<f64> = ok.iter().filter_map(|r| r.gap).collect();
            let (mean_objective, sd_objective) = mean_sd(&objectives);
            let (mean_elapsed_ms, sd_elapsed_ms) = mean_sd(&times);
            SummaryRow {
                engine: key.0,
                n: key.1,
                runs: rows.len(),
                errors: rows.len() - ok.len(),
                mean_objective,
                sd_objective,
                mean_elapsed_ms,
                sd_elapsed_ms,
                mean_gap: (!gaps.is_empty()).then(|| gaps.iter().sum::<f64>() / gaps.len() as f64),
            }
        })
        .collect()
}

pub fn format_summary(rows: &[SummaryRow], contended: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# elapsed_ms is solver time only (instance generation, oracle and file I/O excluded){}",
        if contended {
            "; cells ran concurrently, timings are contended"
        } else {
            ""
        }
    );
    let _ = writeln!(
        out,
        "{:<16} {:>6} {:>5} {:>4} {:>16} {:>12} {:>12} {:>10} {:>10}",
        "engine", "n", "runs", "err", "mean_obj", "sd_obj", "mean_ms", "sd_ms", "mean_gap"
    );
    for r in rows {
        let gap = r
            .mean_gap
            .map_or_else(|| "-".to_string(), |g| format!("{:.4}%", g * 100.0));
        let _ = writeln!(
            out,
            "{:<16} {:>6} {:>5} {:>4} {:>16.4} {:>12.4} {:>12.3} {:>10.3} {:>10}",
            r.engine,
            r.n,
            r.runs,
            r.errors,
            r.mean_objective,
            r.sd_objective,
            r.mean_elapsed_ms,
            r.sd_elapsed_ms,
            gap
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_text_parsing() {
        let mut spec = CampaignSpec::default();
        spec.apply_spec_text(
            "# campaign\nsizes = 32,64\ninstances=2\nreps=3\nbound=50\nbase_seed=9\n\
             engines=dgs-seq,dgs-par:2,auction:scaled\ndeadline_ms=250\noracle=hungarian\n",
        )
        .unwrap();
        assert_eq!(spec.sizes, vec![32, 64]);
        assert_eq!(spec.instances_per_size, 2);
        assert_eq!(spec.repetitions, 3);
        assert_eq!(spec.bound, 50.0);
        assert_eq!(spec.base_seed, 9);
        assert_eq!(spec.engines.len(), 3);
        assert_eq!(spec.deadline, Some(Duration::from_millis(250)));
        assert!(spec.oracle);
    }

    #[test]
    fn spec_text_errors() {
        let mut spec = CampaignSpec::default();
        assert!(spec.apply_spec_text("sizes 64\n").is_err());
        assert!(spec.apply_spec_text("colour=blue\n").is_err());
        assert!(spec.apply_spec_text("engines=simplex\n").is_err());
        let zero = CampaignSpec {
            sizes: vec![0],
            ..Default::default()
        };
        assert!(zero.validate().is_err());
    }

    #[test]
    fn seeds_are_distinct_per_cell() {
        let a = run_seed(1, 64, 0, 0);
        assert_ne!(a, run_seed(1, 64, 0, 1));
        assert_ne!(a, run_seed(1, 64, 1, 0));
        assert_ne!(a, run_seed(1, 128, 0, 0));
        assert_ne!(instance_seed(1, 64, 0), instance_seed(2, 64, 0));
    }

    #[test]
    fn row_count_and_order() {
        let spec = CampaignSpec {
            sizes: vec![16, 8],
            instances_per_size: 2,
            repetitions: 2,
            engines: vec![Engine::DgsSeq, Engine::Hungarian],
            ..Default::default()
        };
        let rows = run_campaign(&spec, &RunOptions::default(), 1).unwrap();
        assert_eq!(rows.len(), 2 * 2 * 2 * 2);
        assert_eq!(rows[0].n, 16);
        assert_eq!(rows[0].engine, "dgs-seq");
        assert_eq!(rows[2].engine, "hungarian");
        assert_eq!(rows[8].n, 8);
    }

    #[test]
    fn failing_cells_are_marked() {
        let spec = CampaignSpec {
            sizes: vec![12],
            engines: vec![Engine::Brute, Engine::DgsSeq],
            ..Default::default()
        };
        let rows = run_campaign(&spec, &RunOptions::default(), 1).unwrap();
        assert_eq!(rows[0].terminated_by, Outcome::Error);
        assert_eq!(rows[0].objective, None);
        assert_eq!(rows[1].terminated_by, Outcome::Converged);
        let summary = summarize(&rows);
        assert_eq!(summary[0].errors, 1);
    }

    #[test]
    fn parallel_cells_keep_objectives() {
        let spec = CampaignSpec {
            sizes: vec![32],
            instances_per_size: 2,
            repetitions: 2,
            engines: vec![Engine::DgsSeq, Engine::DgsPar { workers: Some(2) }],
            ..Default::default()
        };
        let a = run_campaign(&spec, &RunOptions::default(), 1).unwrap();
        let b = run_campaign(&spec, &RunOptions::default(), 3).unwrap();
        let objs = |rows: &[BenchRecord]| rows.iter().map(|r| r.objective).collect::<Vec<_>>();
        assert_eq!(objs(&a), objs(&b));
    }

    #[test]
    fn mean_and_sd() {
        let (m, s) = mean_sd(&[1.0, 2.0, 3.0]);
        assert_eq!(m, 2.0);
        assert_eq!(s, 1.0);
    }
}
