use crate::error::{LsapError, Result};
use crate::model::{Assignment, Instance};
use crate::report::{Clock, SolveReport, TerminatedBy};

/// Largest size [`brute_force_solve`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Exhaustive search over all `n!` assignments. The first maximum found in
/// lexicographic order of `sigma` wins.
pub fn brute_force_solve(inst: &Instance) -> Result<SolveReport> {
    let n = inst.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(LsapError::SizeGuard {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let clock = Clock::start(None);
    let mut search = Search {
        inst,
        sigma: vec![0; n],
        used: vec![false; n],
        best: f64::NEG_INFINITY,
        best_sigma: Vec::new(),
        visited: 0,
    };
    search.descend(0, 0.0);
    let visited = search.visited;
    let assignment = Assignment::from_sigma(inst, search.best_sigma)?;
    Ok(SolveReport {
        objective_trace: vec![(0, assignment.value())],
        assignment,
        outer_iterations: visited,
        switches_applied: 0,
        elapsed: clock.elapsed(),
        terminated_by: TerminatedBy::Converged,
        gap_vs_oracle: None,
        completed_greedily: false,
    })
}

struct Search<'a> {
    inst: &'a Instance,
    sigma: Vec<usize>,
    used: Vec<bool>,
    best: f64,
    best_sigma: Vec<usize>,
    visited: u64,
}

impl Search<'_> {
    // Assigns an agent to `job`; `partial` is the sum over jobs before it.
    fn descend(&mut self, job: usize, partial: f64) {
        let n = self.sigma.len();
        if job == n {
            self.visited += 1;
            if partial > self.best {
                self.best = partial;
                self.best_sigma.clone_from(&self.sigma);
            }
            return;
        }
        for agent in 0..n {
            if self.used[agent] {
                continue;
            }
            self.used[agent] = true;
            self.sigma[job] = agent;
            self.descend(job + 1, partial + self.inst.benefit(agent, job));
            self.used[agent] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_element() {
        let inst = Instance::new(1, vec![4.0]).unwrap();
        let rep = brute_force_solve(&inst).unwrap();
        assert_eq!(rep.assignment.sigma(), &[0]);
        assert_eq!(rep.objective(), 4.0);
    }

    #[test]
    fn two_by_two() {
        let inst = Instance::from_rows(&[vec![1.0, 2.0], vec![3.0, 5.0]]).unwrap();
        let rep = brute_force_solve(&inst).unwrap();
        assert_eq!(rep.assignment.sigma(), &[0, 1]);
        assert_eq!(rep.objective(), 6.0);
        assert_eq!(rep.outer_iterations, 2);
    }

    #[test]
    fn refuses_large_instances() {
        let inst = Instance::new(11, vec![0.0; 121]).unwrap();
        assert_eq!(
            brute_force_solve(&inst).unwrap_err(),
            LsapError::SizeGuard { n: 11, limit: 10 }
        );
    }
}
