//! Parallel Deep Greedy Switching.
//!
//! Each inner iteration runs three kernels:
//!
//! 1. *evaluate*: agent and job records are recomputed in parallel against a
//!    frozen assignment. Every worker owns a disjoint range of record slots, so
//!    the tables are bit-identical to a sequential evaluation.
//! 2. *check conflicts*: a sequential pass in ascending agent then job order
//!    reserves both agents of every proposal whose agents are still free.
//! 3. *apply*: all accepted proposals touch pairwise disjoint agents and jobs,
//!    so their improvements are recomputed in parallel on the frozen
//!    assignment and then committed together.
//!
//! Results do not depend on the number of workers.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use rayon::ThreadPool;

use crate::dgs::eval::{agent_move, job_move, scan_agent, scan_job};
use crate::dgs::{initial_random, DgsConfig};
use crate::error::{LsapError, Result};
use crate::model::{Assignment, DeltaTables, ExchangeRecord, Instance};
use crate::report::{Clock, ObjectiveTrace, SolveReport, TerminatedBy};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelConfig {
    pub workers: usize,
    /// Records per work unit in the evaluation kernel.
    pub chunk: usize,
    pub dgs: DgsConfig,
    pub reevaluation: Reevaluation,
}

/// How records are refreshed after each round of parallel switches.
///
/// Both policies rescan the agents and jobs that took part in an applied
/// exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reevaluation {
    /// A record whose move now involves a different agent or job is repriced
    /// in O(1) for the same move and dropped if the move stopped improving.
    /// Dropped records are recovered by the next full evaluation.
    #[default]
    Repair,
    /// Every active record, accepted or conflicted, is rescanned.
    Rescan,
}

impl Default for ParallelConfig {
    fn default() -> Self {
        ParallelConfig {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            chunk: 64,
            dgs: DgsConfig::default(),
            reevaluation: Reevaluation::default(),
        }
    }
}

impl ParallelConfig {
    pub fn new(workers: usize, dgs: DgsConfig) -> Self {
        ParallelConfig {
            workers,
            chunk: 64,
            dgs,
            reevaluation: Reevaluation::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(LsapError::InvalidConfig(
                "workers must be at least 1".into(),
            ));
        }
        if self.chunk == 0 {
            return Err(LsapError::InvalidConfig("chunk must be at least 1".into()));
        }
        self.dgs.validate()
    }
}

/// A proposal that survived conflict checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Proposal {
    /// The agent record of this agent.
    Agent(usize),
    /// The job record of this job.
    Job(usize),
}

/// Output of [`check_conflicts`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConflictSets {
    /// Agents claimed by an accepted proposal.
    pub reserved: BTreeSet<usize>,
    /// Agents whose proposal, or whose job's proposal, collided with a
    /// reservation.
    pub conflicted: BTreeSet<usize>,
    /// Proposals that reserved their agents, in the order they were accepted.
    pub accepted: Vec<Proposal>,
}

/// One exchange committed by [`apply_parallel_switches`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppliedExchange {
    pub source: Proposal,
    /// Agent moving onto `job`.
    pub agent: usize,
    pub job: usize,
    /// Previous holder of `job`, which takes over `vacated`.
    pub displaced: usize,
    pub vacated: usize,
    pub delta: f64,
}

/// Greedy reservation pass over all active records: agents in ascending
/// order, then jobs in ascending order.
pub fn check_conflicts(tables: &DeltaTables, asg: &Assignment) -> ConflictSets {
    let n = asg.n();
    let sigma = asg.sigma();
    let mut reserved = vec![false; n];
    let mut sets = ConflictSets::default();

    for (i, rec) in tables.agent_records.iter().enumerate() {
        if !rec.active {
            continue;
        }
        let other = sigma[rec.partner];
        if reserved[i] || reserved[other] {
            sets.conflicted.insert(i);
        } else {
            reserved[i] = true;
            reserved[other] = true;
            sets.accepted.push(Proposal::Agent(i));
        }
    }
    for (j, rec) in tables.job_records.iter().enumerate() {
        if !rec.active {
            continue;
        }
        let holder = sigma[j];
        if reserved[holder] || reserved[rec.partner] {
            sets.conflicted.insert(holder);
        } else {
            reserved[holder] = true;
            reserved[rec.partner] = true;
            sets.accepted.push(Proposal::Job(j));
        }
    }
    sets.reserved = reserved
        .iter()
        .enumerate()
        .filter_map(|(i, &r)| r.then_some(i))
        .collect();
    sets
}

/// Worker pool plus the three kernels.
pub struct ParallelKernels {
    pool: ThreadPool,
    chunk: usize,
    threshold: f64,
}

impl ParallelKernels {
    pub fn new(cfg: &ParallelConfig) -> Result<Self> {
        cfg.validate()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .thread_name(|k| format!("dgs-worker-{k}"))
            .build()
            .map_err(|e| LsapError::InvalidConfig(format!("cannot start worker pool: {e}")))?;
        Ok(ParallelKernels {
            pool,
            chunk: cfg.chunk,
            threshold: cfg.dgs.improvement_epsilon,
        })
    }

    /// Recomputes every record. Returns `false` if `deadline` passed before the
    /// tables were complete, in which case their content is unspecified.
    pub fn evaluate_all(
        &self,
        inst: &Instance,
        asg: &Assignment,
        tables: &mut DeltaTables,
        deadline: Option<Instant>,
    ) -> bool {
        let chunk = self.chunk;
        let threshold = self.threshold;
        let expired = || deadline.is_some_and(|d| Instant::now() >= d);
        let DeltaTables {
            agent_records,
            job_records,
        } = tables;
        self.pool.install(|| {
            agent_records
                .par_chunks_mut(chunk)
                .enumerate()
                .for_each(|(c, slots)| {
                    if expired() {
                        return;
                    }
                    for (k, slot) in slots.iter_mut().enumerate() {
                        *slot = scan_agent(inst, asg, c * chunk + k, threshold);
                    }
                });
            job_records
                .par_chunks_mut(chunk)
                .enumerate()
                .for_each(|(c, slots)| {
                    if expired() {
                        return;
                    }
                    for (k, slot) in slots.iter_mut().enumerate() {
                        *slot = scan_job(inst, asg, c * chunk + k, threshold);
                    }
                });
        });
        !expired()
    }

    /// Recomputes the records of the listed agents and jobs.
    pub fn evaluate_subset(
        &self,
        inst: &Instance,
        asg: &Assignment,
        tables: &mut DeltaTables,
        agents: &[usize],
        jobs: &[usize],
    ) {
        let threshold = self.threshold;
        let chunk = self.chunk.max(1);
        let (agent_recs, job_recs): (Vec<ExchangeRecord>, Vec<ExchangeRecord>) =
            self.pool.install(|| {
                rayon::join(
                    || {
                        agents
                            .par_iter()
                            .with_min_len(chunk)
                            .map(|&i| scan_agent(inst, asg, i, threshold))
                            .collect()
                    },
                    || {
                        jobs.par_iter()
                            .with_min_len(chunk)
                            .map(|&j| scan_job(inst, asg, j, threshold))
                            .collect()
                    },
                )
            });
        for (&i, rec) in agents.iter().zip(agent_recs) {
            tables.agent_records[i] = rec;
        }
        for (&j, rec) in jobs.iter().zip(job_recs) {
            tables.job_records[j] = rec;
        }
    }

    /// Applies every accepted proposal whose improvement, recomputed on the
    /// current assignment, still exceeds the threshold.
    ///
    /// # Panics
    ///
    /// If two selected exchanges share an agent or a job, which means `sets`
    /// did not come from [`check_conflicts`] on these tables.
    pub fn apply(
        &self,
        inst: &Instance,
        asg: &mut Assignment,
        tables: &DeltaTables,
        sets: &ConflictSets,
    ) -> Vec<AppliedExchange> {
        let threshold = self.threshold;
        let frozen: &Assignment = asg;
        let chunk = self.chunk.max(1);
        let candidates: Vec<Option<AppliedExchange>> = self.pool.install(|| {
            sets.accepted
                .par_iter()
                .with_min_len(chunk)
                .map(|&source| {
                    let (agent, job) = match source {
                        Proposal::Agent(i) => {
                            let rec = &tables.agent_records[i];
                            if !rec.active {
                                return None;
                            }
                            agent_move(i, rec)
                        }
                        Proposal::Job(j) => {
                            let rec = &tables.job_records[j];
                            if !rec.active {
                                return None;
                            }
                            job_move(j, rec)
                        }
                    };
                    let vacated = frozen.tau()[agent];
                    if vacated == job {
                        return None;
                    }
                    let delta = frozen.exchange_delta(inst, agent, job);
                    (delta > threshold).then_some(AppliedExchange {
                        source,
                        agent,
                        job,
                        displaced: frozen.sigma()[job],
                        vacated,
                        delta,
                    })
                })
                .collect()
        });
        let applied: Vec<AppliedExchange> = candidates.into_iter().flatten().collect();

        let n = asg.n();
        let mut agent_seen = vec![false; n];
        let mut job_seen = vec![false; n];
        for ex in &applied {
            for a in [ex.agent, ex.displaced] {
                assert!(!agent_seen[a], "agent {a} touched by two exchanges");
                agent_seen[a] = true;
            }
            for j in [ex.job, ex.vacated] {
                assert!(!job_seen[j], "job {j} touched by two exchanges");
                job_seen[j] = true;
            }
        }
        for ex in &applied {
            asg.apply_exchange(inst, ex.agent, ex.job, ex.delta);
        }
        applied
    }
}

/// Collects the records to rescan after a round of switches. Afterwards every
/// active record outside `agents`/`jobs` holds the exact delta of its move on
/// `asg`, so the next conflict check cannot stall on stale proposals.
#[allow(clippy::too_many_arguments)]
fn select_reevaluation(
    inst: &Instance,
    asg: &Assignment,
    tables: &mut DeltaTables,
    cfg: &ParallelConfig,
    touched_agents: &[bool],
    touched_jobs: &[bool],
    agents: &mut Vec<usize>,
    jobs: &mut Vec<usize>,
) {
    let eps = cfg.dgs.improvement_epsilon;
    agents.clear();
    jobs.clear();
    match cfg.reevaluation {
        Reevaluation::Rescan => {
            for (i, rec) in tables.agent_records.iter().enumerate() {
                if rec.active || touched_agents[i] {
                    agents.push(i);
                }
            }
            for (j, rec) in tables.job_records.iter().enumerate() {
                if rec.active || touched_jobs[j] {
                    jobs.push(j);
                }
            }
        }
        Reevaluation::Repair => {
            for (i, rec) in tables.agent_records.iter_mut().enumerate() {
                if touched_agents[i] {
                    agents.push(i);
                } else if rec.active && touched_jobs[rec.partner] {
                    // Same move, new holder of the target job.
                    let delta = asg.exchange_delta(inst, i, rec.partner);
                    if delta > eps {
                        rec.delta = delta;
                    } else {
                        rec.clear();
                    }
                }
            }
            for (j, rec) in tables.job_records.iter_mut().enumerate() {
                if touched_jobs[j] {
                    jobs.push(j);
                } else if rec.active && touched_agents[rec.partner] {
                    let delta = asg.exchange_delta(inst, rec.partner, j);
                    if delta > eps {
                        rec.delta = delta;
                    } else {
                        rec.clear();
                    }
                }
            }
        }
    }
}

/// Parallel evaluation of every agent and job record.
pub fn evaluate_all_parallel(
    inst: &Instance,
    asg: &Assignment,
    tables: &mut DeltaTables,
    cfg: &ParallelConfig,
) -> Result<()> {
    let kernels = ParallelKernels::new(cfg)?;
    kernels.evaluate_all(inst, asg, tables, None);
    Ok(())
}

/// Applies the non-conflicting proposals of `sets` to a copy of `asg`.
pub fn apply_parallel_switches(
    inst: &Instance,
    asg: &Assignment,
    tables: &DeltaTables,
    sets: &ConflictSets,
    cfg: &ParallelConfig,
) -> Result<(Assignment, Vec<AppliedExchange>)> {
    let kernels = ParallelKernels::new(cfg)?;
    let mut next = asg.clone();
    let applied = kernels.apply(inst, &mut next, tables, sets);
    Ok((next, applied))
}

/// Parallel Deep Greedy Switching.
pub fn dgs_parallel(inst: &Instance, cfg: &ParallelConfig) -> Result<SolveReport> {
    let kernels = ParallelKernels::new(cfg)?;
    let clock = Clock::start(cfg.dgs.deadline);
    let n = inst.n();

    let mut asg = initial_random(inst, cfg.dgs.seed);
    let mut trace = ObjectiveTrace::new(asg.value());
    let mut tables = DeltaTables::new(n);
    let mut outer_iterations = 0u64;
    let mut switches = 0u64;
    let mut terminated_by = TerminatedBy::Converged;

    let mut touched_agents = vec![false; n];
    let mut touched_jobs = vec![false; n];
    let mut agents = Vec::new();
    let mut jobs = Vec::new();

    'outer: loop {
        if clock.expired() {
            terminated_by = TerminatedBy::Deadline;
            break;
        }
        outer_iterations += 1;
        asg.resync_value();
        if !kernels.evaluate_all(inst, &asg, &mut tables, clock.deadline()) {
            terminated_by = TerminatedBy::Deadline;
            break;
        }

        let mut committed = 0u64;
        while tables.any_active() {
            if clock.expired() {
                terminated_by = TerminatedBy::Deadline;
                break 'outer;
            }
            let sets = check_conflicts(&tables, &asg);
            let applied = kernels.apply(inst, &mut asg, &tables, &sets);
            if !applied.is_empty() {
                switches += applied.len() as u64;
                committed += applied.len() as u64;
                trace.step(switches, asg.value());
            }

            touched_agents.iter_mut().for_each(|f| *f = false);
            touched_jobs.iter_mut().for_each(|f| *f = false);
            for ex in &applied {
                touched_agents[ex.agent] = true;
                touched_agents[ex.displaced] = true;
                touched_jobs[ex.job] = true;
                touched_jobs[ex.vacated] = true;
            }
            select_reevaluation(
                inst,
                &asg,
                &mut tables,
                cfg,
                &touched_agents,
                &touched_jobs,
                &mut agents,
                &mut jobs,
            );
            kernels.evaluate_subset(inst, &asg, &mut tables, &agents, &jobs);
        }
        trace.checkpoint(switches, asg.value());
        if committed == 0 {
            asg.resync_value();
            break;
        }
    }
    trace.checkpoint(switches, asg.value());

    Ok(SolveReport {
        assignment: asg,
        objective_trace: trace.into_inner(),
        outer_iterations,
        switches_applied: switches,
        elapsed: clock.elapsed(),
        terminated_by,
        gap_vs_oracle: None,
        completed_greedily: false,
    })
}
