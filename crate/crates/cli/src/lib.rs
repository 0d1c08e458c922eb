//! Command-line front end: instance generation, single solves and benchmark
//! campaigns that write one CSV row per run.

pub mod campaign;
pub mod commands;
pub mod engine;
pub mod record;
