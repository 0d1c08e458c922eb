//! Jacobi (synchronous) auction: every unassigned agent bids at once for its
//! best job, each job goes to its highest bidder, and the loop stops when all
//! agents hold a job. The result is within `n * epsilon` of the optimum.

use std::time::Duration;

use crate::error::{LsapError, Result};
use crate::model::{Assignment, Instance};
use crate::report::{Clock, SolveReport, TerminatedBy};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuctionConfig {
    /// Final bidding increment.
    pub epsilon: f64,
    /// Run a sequence of auctions with shrinking increments, keeping prices.
    pub scaling: bool,
    pub scale_factor: f64,
    pub deadline: Option<Duration>,
}

impl AuctionConfig {
    /// `(max benefit - min benefit) / (2n)`, no scaling.
    pub fn default_for(inst: &Instance) -> Self {
        AuctionConfig {
            epsilon: default_epsilon(inst),
            scaling: false,
            scale_factor: 4.0,
            deadline: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(LsapError::InvalidConfig(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(self.scale_factor > 1.0 && self.scale_factor.is_finite()) {
            return Err(LsapError::InvalidConfig(format!(
                "scale_factor must exceed 1, got {}",
                self.scale_factor
            )));
        }
        Ok(())
    }
}

pub fn default_epsilon(inst: &Instance) -> f64 {
    let (lo, hi) = inst.min_max();
    let range = hi - lo;
    let n = inst.n() as f64;
    if range > 0.0 {
        range / (2.0 * n)
    } else {
        1.0 / (2.0 * n)
    }
}

/// Prices and the partial assignment of a running auction.
#[derive(Debug, Clone)]
pub struct AuctionState {
    prices: Vec<f64>,
    job_owner: Vec<Option<usize>>,
    agent_job: Vec<Option<usize>>,
    unassigned: Vec<usize>,
    epsilon: f64,
    // per-round scratch
    best_bid: Vec<f64>,
    best_bidder: Vec<usize>,
    bid_jobs: Vec<usize>,
}

impl AuctionState {
    pub fn new(n: usize, epsilon: f64) -> Self {
        AuctionState {
            prices: vec![0.0; n],
            job_owner: vec![None; n],
            agent_job: vec![None; n],
            unassigned: (0..n).collect(),
            epsilon,
            best_bid: vec![f64::NEG_INFINITY; n],
            best_bidder: vec![usize::MAX; n],
            bid_jobs: Vec::new(),
        }
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn is_complete(&self) -> bool {
        self.unassigned.is_empty()
    }

    /// Drops the assignment but keeps prices, for the next scaling phase.
    pub fn restart(&mut self, epsilon: f64) {
        let n = self.prices.len();
        self.job_owner.iter_mut().for_each(|o| *o = None);
        self.agent_job.iter_mut().for_each(|o| *o = None);
        self.unassigned = (0..n).collect();
        self.epsilon = epsilon;
    }

    /// One synchronous bidding round. Returns the number of jobs awarded.
    pub fn bid_round(&mut self, inst: &Instance) -> usize {
        let n = inst.n();
        let bidders = std::mem::take(&mut self.unassigned);
        for &agent in &bidders {
            let row = inst.agent_row(agent);
            let mut best_val = f64::NEG_INFINITY;
            let mut second_val = f64::NEG_INFINITY;
            let mut best_job = 0;
            for (j, (&b, &p)) in row.iter().zip(&self.prices).enumerate() {
                let net = b - p;
                if net > best_val {
                    second_val = best_val;
                    best_val = net;
                    best_job = j;
                } else if net > second_val {
                    second_val = net;
                }
            }
            let increment = if second_val.is_finite() {
                best_val - second_val + self.epsilon
            } else {
                self.epsilon
            };
            let bid = self.prices[best_job] + increment;
            if self.best_bidder[best_job] == usize::MAX {
                self.bid_jobs.push(best_job);
            }
            // Bidders are visited in ascending order within a round, so the
            // strict comparison keeps the smallest agent on ties.
            if bid > self.best_bid[best_job] {
                self.best_bid[best_job] = bid;
                self.best_bidder[best_job] = agent;
            }
        }
        let mut awarded = 0;
        for &job in &self.bid_jobs {
            let winner = self.best_bidder[job];
            if let Some(prev) = self.job_owner[job] {
                self.agent_job[prev] = None;
            }
            self.job_owner[job] = Some(winner);
            self.agent_job[winner] = Some(job);
            self.prices[job] = self.best_bid[job];
            self.best_bid[job] = f64::NEG_INFINITY;
            self.best_bidder[job] = usize::MAX;
            awarded += 1;
        }
        self.bid_jobs.clear();
        // Displaced holders and outbid agents bid again next round.
        let mut unassigned = bidders;
        unassigned.clear();
        unassigned.extend((0..n).filter(|&a| self.agent_job[a].is_none()));
        self.unassigned = unassigned;
        awarded
    }

    /// Gives every unassigned agent, in index order, its best free job.
    fn complete_greedily(&mut self, inst: &Instance) {
        for agent in std::mem::take(&mut self.unassigned) {
            let row = inst.agent_row(agent);
            let job = (0..inst.n())
                .filter(|&j| self.job_owner[j].is_none())
                .max_by(|&a, &b| row[a].total_cmp(&row[b]).then(b.cmp(&a)))
                .expect("a free job exists for every free agent");
            self.job_owner[job] = Some(agent);
            self.agent_job[agent] = Some(job);
        }
    }

    fn sigma(&self) -> Vec<usize> {
        self.job_owner
            .iter()
            .map(|o| o.expect("complete assignment"))
            .collect()
    }
}

pub fn auction_solve(inst: &Instance, cfg: &AuctionConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let clock = Clock::start(cfg.deadline);

    // Increments from the benefit range down to cfg.epsilon.
    let mut phases = Vec::new();
    if cfg.scaling {
        let (lo, hi) = inst.min_max();
        let mut eps = hi - lo;
        while eps > cfg.epsilon {
            phases.push(eps);
            eps /= cfg.scale_factor;
        }
    }
    phases.push(cfg.epsilon);

    let mut state = AuctionState::new(inst.n(), phases[0]);
    let mut rounds = 0u64;
    let mut awards = 0u64;
    let mut terminated_by = TerminatedBy::Converged;
    'phases: for (k, &eps) in phases.iter().enumerate() {
        if k > 0 {
            state.restart(eps);
        }
        while !state.is_complete() {
            if clock.expired() {
                terminated_by = TerminatedBy::Deadline;
                break 'phases;
            }
            awards += state.bid_round(inst) as u64;
            rounds += 1;
        }
    }
    let completed_greedily = !state.is_complete();
    if completed_greedily {
        state.complete_greedily(inst);
    }
    let assignment = Assignment::from_sigma(inst, state.sigma())?;
    Ok(SolveReport {
        objective_trace: vec![(awards, assignment.value())],
        assignment,
        outer_iterations: rounds,
        switches_applied: awards,
        elapsed: clock.elapsed(),
        terminated_by,
        gap_vs_oracle: None,
        completed_greedily,
    })
}
