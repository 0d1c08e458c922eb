//! The assignment data model: benefit matrices, permutations and the
//! 2-exchange primitive every solver is built on.

use crate::error::{LsapError, Result};

/// A square benefit matrix. `benefit(i, j)` is what agent `i` realizes on job `j`.
///
/// The matrix is kept twice, row-major and column-major, so that both the
/// per-agent and the per-job scans read contiguous memory.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    n: usize,
    rows: Vec<f64>,
    cols: Vec<f64>,
}

impl Instance {
    /// Builds an instance from a row-major buffer of `n * n` finite values.
    pub fn new(n: usize, benefits: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(LsapError::InvalidInstance("n must be at least 1".into()));
        }
        if benefits.len() != n * n {
            return Err(LsapError::SizeMismatch {
                expected: n * n,
                actual: benefits.len(),
            });
        }
        if let Some(pos) = benefits.iter().position(|v| !v.is_finite()) {
            return Err(LsapError::InvalidInstance(format!(
                "entry ({}, {}) is not finite",
                pos / n,
                pos % n
            )));
        }
        let mut cols = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                cols[j * n + i] = benefits[i * n + j];
            }
        }
        Ok(Instance {
            n,
            rows: benefits,
            cols,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(LsapError::SizeMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Instance::new(n, flat)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn benefit(&self, agent: usize, job: usize) -> f64 {
        self.rows[agent * self.n + job]
    }

    /// Benefits of `agent` over all jobs.
    #[inline]
    pub fn agent_row(&self, agent: usize) -> &[f64] {
        &self.rows[agent * self.n..(agent + 1) * self.n]
    }

    /// Benefits of all agents on `job`.
    #[inline]
    pub fn job_column(&self, job: usize) -> &[f64] {
        &self.cols[job * self.n..(job + 1) * self.n]
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.rows
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.rows
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    /// Returns a copy with every benefit multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Instance::new(self.n, self.rows.iter().map(|v| v * factor).collect())
    }
}

/// A complete one-to-one assignment of jobs to agents.
///
/// `sigma[j]` is the agent holding job `j` and `tau[i]` the job held by agent
/// `i`. Both directions are kept in sync, together with the per-job benefit
/// `gains[j] = benefit(sigma[j], j)` and the cached objective `value`.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    sigma: Vec<usize>,
    tau: Vec<usize>,
    gains: Vec<f64>,
    value: f64,
}

impl Assignment {
    pub fn from_sigma(inst: &Instance, sigma: Vec<usize>) -> Result<Self> {
        if sigma.len() != inst.n() {
            return Err(LsapError::SizeMismatch {
                expected: inst.n(),
                actual: sigma.len(),
            });
        }
        let tau = make_tau(&sigma)?;
        let gains: Vec<f64> = sigma
            .iter()
            .enumerate()
            .map(|(j, &i)| inst.benefit(i, j))
            .collect();
        let value = gains.iter().sum();
        Ok(Assignment {
            sigma,
            tau,
            gains,
            value,
        })
    }

    pub fn identity(inst: &Instance) -> Self {
        Assignment::from_sigma(inst, (0..inst.n()).collect()).expect("identity is a permutation")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// Agent holding each job.
    #[inline]
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Job held by each agent.
    #[inline]
    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// `benefit(sigma[j], j)` for every job.
    #[inline]
    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    /// Cached objective value.
    #[inline]
    pub fn value(&self) -> f64 {
        self.value
    }

    /// Change in objective if agent `i` takes job `j` and the current holder of
    /// `j` takes agent `i`'s job. Zero when `j` is already `i`'s job.
    #[inline]
    pub fn exchange_delta(&self, inst: &Instance, i: usize, j: usize) -> f64 {
        let own = self.tau[i];
        let other = self.sigma[j];
        inst.benefit(i, j) + inst.benefit(other, own) - self.gains[own] - self.gains[j]
    }

    /// In-place 2-exchange with a precomputed `delta`.
    pub(crate) fn apply_exchange(&mut self, inst: &Instance, i: usize, j: usize, delta: f64) {
        let own = self.tau[i];
        let other = self.sigma[j];
        debug_assert_ne!(own, j);
        self.sigma[j] = i;
        self.sigma[own] = other;
        self.tau[i] = j;
        self.tau[other] = own;
        self.gains[j] = inst.benefit(i, j);
        self.gains[own] = inst.benefit(other, own);
        self.value += delta;
    }

    /// Replaces the cached value by a fresh sum over `gains`, discarding any
    /// drift accumulated by incremental updates.
    pub(crate) fn resync_value(&mut self) {
        self.value = self.gains.iter().sum();
    }

    pub fn into_sigma(self) -> Vec<usize> {
        self.sigma
    }
}

/// Total benefit of `asg` on `inst`.
pub fn objective(inst: &Instance, asg: &Assignment) -> Result<f64> {
    if asg.n() != inst.n() {
        return Err(LsapError::SizeMismatch {
            expected: inst.n(),
            actual: asg.n(),
        });
    }
    Ok(asg
        .sigma
        .iter()
        .enumerate()
        .map(|(j, &i)| inst.benefit(i, j))
        .sum())
}

/// Inverts a permutation.
pub fn make_tau(sigma: &[usize]) -> Result<Vec<usize>> {
    let n = sigma.len();
    let mut tau = vec![usize::MAX; n];
    for (j, &i) in sigma.iter().enumerate() {
        if i >= n {
            return Err(LsapError::InvalidAssignment(format!(
                "job {j} mapped to agent {i}, outside 0..{n}"
            )));
        }
        if tau[i] != usize::MAX {
            return Err(LsapError::InvalidAssignment(format!(
                "agent {i} holds both job {} and job {j}",
                tau[i]
            )));
        }
        tau[i] = j;
    }
    Ok(tau)
}

/// Returns a copy of `asg` in which agent `i` holds job `j` and the previous
/// holder of `j` takes over agent `i`'s former job.
pub fn switch_exchange(
    i: usize,
    j: usize,
    asg: &Assignment,
    inst: &Instance,
) -> Result<Assignment> {
    let n = inst.n();
    if asg.n() != n {
        return Err(LsapError::SizeMismatch {
            expected: n,
            actual: asg.n(),
        });
    }
    for index in [i, j] {
        if index >= n {
            return Err(LsapError::IndexOutOfRange { index, n });
        }
    }
    if asg.tau[i] == j {
        return Err(LsapError::NoOpExchange { agent: i, job: j });
    }
    let delta = asg.exchange_delta(inst, i, j);
    let mut next = asg.clone();
    next.apply_exchange(inst, i, j, delta);
    Ok(next)
}

/// Best 2-exchange found for one agent or one job.
///
/// For an agent record `partner` is the job to move to; for a job record it is
/// the agent that should take the job over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangeRecord {
    pub partner: usize,
    pub delta: f64,
    pub active: bool,
}

impl ExchangeRecord {
    pub const INACTIVE: ExchangeRecord = ExchangeRecord {
        partner: usize::MAX,
        delta: 0.0,
        active: false,
    };

    pub fn improving(partner: usize, delta: f64) -> Self {
        debug_assert!(delta > 0.0);
        ExchangeRecord {
            partner,
            delta,
            active: true,
        }
    }

    /// Zeroes the improvement but remembers the partner.
    pub fn clear(&mut self) {
        self.delta = 0.0;
        self.active = false;
    }
}

impl Default for ExchangeRecord {
    fn default() -> Self {
        ExchangeRecord::INACTIVE
    }
}

/// Per-agent and per-job best exchanges.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaTables {
    pub agent_records: Vec<ExchangeRecord>,
    pub job_records: Vec<ExchangeRecord>,
}

impl DeltaTables {
    pub fn new(n: usize) -> Self {
        DeltaTables {
            agent_records: vec![ExchangeRecord::INACTIVE; n],
            job_records: vec![ExchangeRecord::INACTIVE; n],
        }
    }

    pub fn n(&self) -> usize {
        self.agent_records.len()
    }

    pub fn any_active(&self) -> bool {
        self.agent_records.iter().any(|r| r.active) || self.job_records.iter().any(|r| r.active)
    }
}
