//! Linear sum assignment: maximize `sum_j benefit(sigma[j], j)` over all
//! one-to-one assignments of `n` jobs to `n` agents.
//!
//! The main solvers are the Deep Greedy Switching heuristics
//! ([`dgs_sequential`], [`dgs_parallel`]), which keep a complete assignment at
//! all times and can be interrupted by a deadline. Exact ([`hungarian_solve`],
//! [`brute_force_solve`]) and auction ([`auction_solve`]) solvers serve as
//! baselines.

pub mod baselines;
pub mod dgs;
pub mod error;
pub mod geom;
pub mod io;
pub mod model;
pub mod parallel;
pub mod report;
pub mod rng;

pub use baselines::{
    auction_solve, brute_force_solve, hungarian_solve, AuctionConfig, BRUTE_FORCE_LIMIT,
};
pub use dgs::{ade, dgs_sequential, initial_random, jde, DgsConfig};
pub use error::{LsapError, Result};
pub use geom::{generate_geom, GeomParams};
pub use io::{read_instance, write_instance};
pub use model::{
    make_tau, objective, switch_exchange, Assignment, DeltaTables, ExchangeRecord, Instance,
};
pub use parallel::{
    apply_parallel_switches, check_conflicts, dgs_parallel, evaluate_all_parallel, AppliedExchange,
    ConflictSets, ParallelConfig, Proposal, Reevaluation,
};
pub use report::{relative_gap, SolveReport, TerminatedBy};
