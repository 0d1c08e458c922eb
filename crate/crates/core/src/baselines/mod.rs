//! Reference solvers used as quality and speed baselines.

mod auction;
mod brute;
mod hungarian;

pub use auction::{auction_solve, AuctionConfig, AuctionState};
pub use brute::{brute_force_solve, BRUTE_FORCE_LIMIT};
pub use hungarian::hungarian_solve;
