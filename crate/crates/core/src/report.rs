use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::model::Assignment;

/// Why a solver returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TerminatedBy {
    Converged,
    Deadline,
}

impl TerminatedBy {
    pub fn as_str(self) -> &'static str {
        match self {
            TerminatedBy::Converged => "converged",
            TerminatedBy::Deadline => "deadline",
        }
    }
}

impl fmt::Display for TerminatedBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TerminatedBy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "converged" => Ok(TerminatedBy::Converged),
            "deadline" => Ok(TerminatedBy::Deadline),
            other => Err(format!("unknown termination reason {other:?}")),
        }
    }
}

/// Outcome of a solver run.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub assignment: Assignment,
    /// `(switches applied so far, objective)` samples; non-decreasing in objective.
    pub objective_trace: Vec<(u64, f64)>,
    /// Outer passes for the switching engines, bidding rounds for the auction,
    /// augmentations for the Hungarian solver.
    pub outer_iterations: u64,
    pub switches_applied: u64,
    pub elapsed: Duration,
    pub terminated_by: TerminatedBy,
    pub gap_vs_oracle: Option<f64>,
    /// Set when the auction ran out of time and its partial assignment was
    /// completed greedily.
    pub completed_greedily: bool,
}

impl SolveReport {
    pub fn objective(&self) -> f64 {
        self.assignment.value()
    }

    /// Fills `gap_vs_oracle` with `(optimal - objective) / optimal`.
    pub fn with_gap(mut self, optimal: f64) -> Self {
        self.gap_vs_oracle = Some(relative_gap(optimal, self.objective()));
        self
    }
}

pub fn relative_gap(optimal: f64, objective: f64) -> f64 {
    if optimal == 0.0 {
        if objective == 0.0 {
            0.0
        } else {
            (optimal - objective) / objective.abs()
        }
    } else {
        (optimal - objective) / optimal.abs()
    }
}

/// Samples of the objective, one per committed step until `cap` entries,
/// then only on explicit checkpoints.
#[derive(Debug, Clone)]
pub(crate) struct ObjectiveTrace {
    samples: Vec<(u64, f64)>,
    cap: usize,
}

pub(crate) const TRACE_CAP: usize = 100_000;

impl ObjectiveTrace {
    pub fn new(initial: f64) -> Self {
        ObjectiveTrace {
            samples: vec![(0, initial)],
            cap: TRACE_CAP,
        }
    }

    pub fn step(&mut self, iteration: u64, value: f64) {
        if self.samples.len() < self.cap {
            self.samples.push((iteration, value));
        }
    }

    pub fn checkpoint(&mut self, iteration: u64, value: f64) {
        if self.samples.len() >= self.cap && self.samples.last() != Some(&(iteration, value)) {
            self.samples.push((iteration, value));
        }
    }

    pub fn into_inner(self) -> Vec<(u64, f64)> {
        self.samples
    }
}

/// Wall-clock budget measured from solver entry.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Clock {
    start: Instant,
    deadline: Option<Instant>,
}

impl Clock {
    pub fn start(budget: Option<Duration>) -> Self {
        let start = Instant::now();
        Clock {
            start,
            deadline: budget.map(|b| start + b),
        }
    }

    #[inline]
    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}
