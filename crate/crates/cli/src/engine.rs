//! Engine names as used on the command line and in CSV reports.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use lsap_core::{
    auction_solve, brute_force_solve, dgs_parallel, dgs_sequential, hungarian_solve, AuctionConfig,
    DgsConfig, Instance, ParallelConfig, Reevaluation, Result, SolveReport,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Engine {
    DgsSeq,
    /// `None` picks the default worker count at run time.
    DgsPar {
        workers: Option<usize>,
    },
    Auction {
        scaling: bool,
    },
    Hungarian,
    Brute,
}

pub const ENGINE_NAMES: &[&str] = &["dgs-seq", "dgs-par", "auction", "hungarian", "brute"];

impl FromStr for Engine {
    type Err = String;

    /// Accepts `dgs-seq`, `dgs-par`, `dgs-par:<workers>`, `auction`,
    /// `auction:scaled`, `hungarian` and `brute`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        match (name, arg) {
            ("dgs-seq", None) => Ok(Engine::DgsSeq),
            ("dgs-par", None) => Ok(Engine::DgsPar { workers: None }),
            ("dgs-par", Some(w)) => match w.parse::<usize>() {
                Ok(w) if w >= 1 => Ok(Engine::DgsPar { workers: Some(w) }),
                _ => Err(format!("invalid worker count in {s:?}")),
            },
            ("auction", None) => Ok(Engine::Auction { scaling: false }),
            ("auction", Some("scaled")) => Ok(Engine::Auction { scaling: true }),
            ("hungarian", None) => Ok(Engine::Hungarian),
            ("brute", None) => Ok(Engine::Brute),
            _ => Err(format!(
                "unknown engine {s:?} (expected one of {})",
                ENGINE_NAMES.join(", ")
            )),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::DgsSeq => f.write_str("dgs-seq"),
            Engine::DgsPar { workers: None } => f.write_str("dgs-par"),
            Engine::DgsPar { workers: Some(w) } => write!(f, "dgs-par:{w}"),
            Engine::Auction { scaling: false } => f.write_str("auction"),
            Engine::Auction { scaling: true } => f.write_str("auction:scaled"),
            Engine::Hungarian => f.write_str("hungarian"),
            Engine::Brute => f.write_str("brute"),
        }
    }
}

/// Knobs shared by every engine invocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub seed: u64,
    pub deadline: Option<Duration>,
    pub default_workers: usize,
    pub chunk: usize,
    pub improvement_epsilon: f64,
    pub reevaluation: Reevaluation,
    /// Auction increment; `None` uses the instance-derived default.
    pub auction_epsilon: Option<f64>,
    pub scale_factor: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            deadline: None,
            default_workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            chunk: 64,
            improvement_epsilon: 0.0,
            reevaluation: Reevaluation::default(),
            auction_epsilon: None,
            scale_factor: 4.0,
        }
    }
}

impl Engine {
    pub fn run(&self, inst: &Instance, opts: &RunOptions) -> Result<SolveReport> {
        let dgs = DgsConfig {
            seed: opts.seed,
            deadline: opts.deadline,
            improvement_epsilon: opts.improvement_epsilon,
        };
        match *self {
            Engine::DgsSeq => dgs_sequential(inst, &dgs),
            Engine::DgsPar { workers } => {
                let cfg = ParallelConfig {
                    workers: workers.unwrap_or(opts.default_workers),
                    chunk: opts.chunk,
                    dgs,
                    reevaluation: opts.reevaluation,
                };
                dgs_parallel(inst, &cfg)
            }
            Engine::Auction { scaling } => {
                let mut cfg = AuctionConfig::default_for(inst);
                if let Some(eps) = opts.auction_epsilon {
                    cfg.epsilon = eps;
                }
                cfg.scaling = scaling;
                cfg.scale_factor = opts.scale_factor;
                cfg.deadline = opts.deadline;
                auction_solve(inst, &cfg)
            }
            Engine::Hungarian => hungarian_solve(inst),
            Engine::Brute => brute_force_solve(inst),
        }
    }
}
