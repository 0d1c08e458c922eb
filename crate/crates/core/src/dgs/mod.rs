//! Deep Greedy Switching.
//!
//! Starting from a random complete assignment the engine evaluates, for every
//! agent and every job, the best improving 2-exchange (see [`eval`]). It then
//! repeatedly applies the single largest improvement, re-evaluating only the
//! two agents and two jobs that took part, until no record improves. The whole
//! evaluate/switch pass is repeated until a pass leaves the objective unchanged.
//!
//! Every committed exchange strictly increases the objective, so a complete
//! assignment is available at any time and the run can be cut off by a
//! deadline.

pub mod eval;

use std::time::Duration;

use rand::seq::SliceRandom;

use crate::error::{LsapError, Result};
use crate::model::{Assignment, DeltaTables, Instance};
use crate::report::{Clock, ObjectiveTrace, SolveReport, TerminatedBy};
use crate::rng::SplitMix64;

pub use eval::{ade, evaluate_all, jde};

use eval::{agent_move, job_move, scan_agent, scan_job};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DgsConfig {
    /// Seed of the random initial assignment.
    pub seed: u64,
    /// Wall-clock budget; `None` runs to convergence.
    pub deadline: Option<Duration>,
    /// An exchange counts as an improvement only if it gains more than this.
    pub improvement_epsilon: f64,
}

impl Default for DgsConfig {
    fn default() -> Self {
        DgsConfig {
            seed: 0,
            deadline: None,
            improvement_epsilon: 0.0,
        }
    }
}

impl DgsConfig {
    pub fn with_seed(seed: u64) -> Self {
        DgsConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.improvement_epsilon >= 0.0 && self.improvement_epsilon.is_finite()) {
            return Err(LsapError::InvalidConfig(format!(
                "improvement_epsilon must be a finite value >= 0, got {}",
                self.improvement_epsilon
            )));
        }
        Ok(())
    }
}

/// Uniformly random permutation `sigma` of `0..n`, drawn by a Fisher-Yates
/// shuffle over the splitmix64 stream seeded with `seed`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(&mut SplitMix64::new(seed));
    sigma
}

/// Random complete assignment with its objective computed.
pub fn initial_random(inst: &Instance, seed: u64) -> Assignment {
    Assignment::from_sigma(inst, random_permutation(inst.n(), seed))
        .expect("shuffled identity is a permutation")
}

/// Sequential Deep Greedy Switching.
pub fn dgs_sequential(inst: &Instance, cfg: &DgsConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let clock = Clock::start(cfg.deadline);
    let n = inst.n();
    let eps = cfg.improvement_epsilon;

    let mut asg = initial_random(inst, cfg.seed);
    let mut trace = ObjectiveTrace::new(asg.value());
    let mut tables = DeltaTables::new(n);
    let mut outer_iterations = 0u64;
    let mut switches = 0u64;

    let finish = |asg: Assignment, trace: ObjectiveTrace, outer, switches, by| {
        Ok(SolveReport {
            assignment: asg,
            objective_trace: trace.into_inner(),
            outer_iterations: outer,
            switches_applied: switches,
            elapsed: clock.elapsed(),
            terminated_by: by,
            gap_vs_oracle: None,
            completed_greedily: false,
        })
    };

    'outer: loop {
        if clock.expired() {
            return finish(
                asg,
                trace,
                outer_iterations,
                switches,
                TerminatedBy::Deadline,
            );
        }
        outer_iterations += 1;
        asg.resync_value();

        for i in 0..n {
            if i % 64 == 0 && clock.expired() {
                break 'outer;
            }
            tables.agent_records[i] = scan_agent(inst, &asg, i, eps);
        }
        for j in 0..n {
            if j % 64 == 0 && clock.expired() {
                break 'outer;
            }
            tables.job_records[j] = scan_job(inst, &asg, j, eps);
        }

        let mut committed = 0u64;
        loop {
            if clock.expired() {
                break 'outer;
            }
            let (i_star, best_agent) = argmax_delta(&tables.agent_records);
            let (j_star, best_job) = argmax_delta(&tables.job_records);
            if best_agent <= 0.0 && best_job <= 0.0 {
                break;
            }
            let (agent, job) = if best_agent > best_job {
                let rec = &mut tables.agent_records[i_star];
                rec.clear();
                agent_move(i_star, rec)
            } else {
                let rec = &mut tables.job_records[j_star];
                rec.clear();
                job_move(j_star, rec)
            };
            // A stale record may point at the agent's own job by now.
            if asg.tau()[agent] == job {
                continue;
            }
            let delta = asg.exchange_delta(inst, agent, job);
            if delta > eps {
                let vacated = asg.tau()[agent];
                let displaced = asg.sigma()[job];
                asg.apply_exchange(inst, agent, job, delta);
                switches += 1;
                committed += 1;
                trace.step(switches, asg.value());
                for a in [agent, displaced] {
                    tables.agent_records[a] = scan_agent(inst, &asg, a, eps);
                }
                for j in [vacated, job] {
                    tables.job_records[j] = scan_job(inst, &asg, j, eps);
                }
            }
        }
        trace.checkpoint(switches, asg.value());
        if committed == 0 {
            asg.resync_value();
            return finish(
                asg,
                trace,
                outer_iterations,
                switches,
                TerminatedBy::Converged,
            );
        }
    }
    // Deadline hit mid-pass: the assignment is complete and at least as good
    // as every earlier state.
    trace.checkpoint(switches, asg.value());
    finish(
        asg,
        trace,
        outer_iterations,
        switches,
        TerminatedBy::Deadline,
    )
}

/// Index and value of the largest delta, smallest index on ties. Inactive
/// records carry a zero delta.
#[inline]
fn argmax_delta(records: &[crate::model::ExchangeRecord]) -> (usize, f64) {
    let mut best = 0.0;
    let mut at = 0;
    for (k, r) in records.iter().enumerate() {
        if r.delta > best {
            best = r.delta;
            at = k;
        }
    }
    (at, best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::objective;

    #[test]
    fn single_element_permutation() {
        assert_eq!(random_permutation(1, 99), vec![0]);
    }

    #[test]
    fn permutation_is_deterministic() {
        assert_eq!(random_permutation(50, 7), random_permutation(50, 7));
        assert_ne!(random_permutation(50, 7), random_permutation(50, 8));
    }

    #[test]
    fn shuffle_is_close_to_uniform() {
        // Each (position, value) pair should appear with probability 1/5.
        let n = 5;
        let draws = 10_000u64;
        let mut counts = vec![[0u64; 5]; n];
        for seed in 0..draws {
            for (pos, v) in random_permutation(n, seed).into_iter().enumerate() {
                counts[pos][v] += 1;
            }
        }
        let p = 1.0 / n as f64;
        let mean = draws as f64 * p;
        let sd = (draws as f64 * p * (1.0 - p)).sqrt();
        for row in &counts {
            for &c in row {
                assert!((c as f64 - mean).abs() < 5.0 * sd, "{counts:?}");
            }
        }
    }

    #[test]
    fn two_by_two_reaches_optimum() {
        let inst = Instance::from_rows(&[vec![0.0, 10.0], vec![10.0, 0.0]]).unwrap();
        for seed in 0..8 {
            let rep = dgs_sequential(&inst, &DgsConfig::with_seed(seed)).unwrap();
            assert_eq!(rep.objective(), 20.0);
            assert_eq!(rep.terminated_by, TerminatedBy::Converged);
        }
    }

    #[test]
    fn zero_deadline_returns_initial_assignment() {
        let inst = crate::geom::generate_geom(&crate::geom::GeomParams::new(64, 100.0, 1).unwrap())
            .unwrap();
        let cfg = DgsConfig {
            seed: 5,
            deadline: Some(Duration::ZERO),
            improvement_epsilon: 0.0,
        };
        let rep = dgs_sequential(&inst, &cfg).unwrap();
        assert_eq!(rep.terminated_by, TerminatedBy::Deadline);
        assert_eq!(rep.assignment, initial_random(&inst, 5));
        assert_eq!(rep.switches_applied, 0);
    }

    #[test]
    fn value_cache_stays_consistent() {
        let inst =
            crate::geom::generate_geom(&crate::geom::GeomParams::new(128, 100.0, 3).unwrap())
                .unwrap();
        let rep = dgs_sequential(&inst, &DgsConfig::with_seed(1)).unwrap();
        let exact = objective(&inst, &rep.assignment).unwrap();
        assert!((rep.objective() - exact).abs() < 1e-9);
        assert!(rep.switches_applied > 0);
    }

    #[test]
    fn negative_epsilon_rejected() {
        let inst = Instance::new(1, vec![1.0]).unwrap();
        let cfg = DgsConfig {
            improvement_epsilon: -1.0,
            ..Default::default()
        };
        assert!(dgs_sequential(&inst, &cfg).is_err());
    }
}
