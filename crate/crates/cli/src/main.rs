use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use lsap_cli::campaign::{parse_list, CampaignSpec};
use lsap_cli::commands::{self, parse_geom_triple, InstanceSource};
use lsap_cli::engine::{Engine, RunOptions};
use lsap_core::{GeomParams, Reevaluation};

#[derive(Parser)]
#[command(name = "lsap", version, about = "Linear sum assignment solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random geometric instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100.0)]
        bound: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve one instance and print a JSON line.
    Solve {
        /// dgs-seq, dgs-par[:workers], auction[:scaled], hungarian or brute.
        #[arg(long, default_value = "dgs-seq")]
        engine: Engine,
        #[arg(long, conflicts_with = "geom", required_unless_present = "geom")]
        input: Option<PathBuf>,
        /// Generate the instance in memory: n,bound,seed.
        #[arg(long)]
        geom: Option<String>,
        /// Seed of the randomized engines.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also solve exactly and report the gap.
        #[arg(long)]
        oracle: Option<Oracle>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Run every engine on generated instances and write CSV rows.
    Bench {
        /// key=value file; command-line flags override it.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Comma-separated sizes.
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long)]
        bound: Option<f64>,
        #[arg(long)]
        base_seed: Option<u64>,
        /// Comma-separated engine names.
        #[arg(long)]
        engines: Option<String>,
        #[arg(long)]
        oracle: Option<Oracle>,
        /// Run this many cells concurrently (timings become contended).
        #[arg(long, default_value_t = 1)]
        parallel_cells: usize,
        /// CSV destination; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Hungarian,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reeval {
    Repair,
    Rescan,
}

#[derive(Args)]
struct Tuning {
    /// Worker threads for dgs-par when the engine name gives none.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = 64)]
    chunk: usize,
    #[arg(long)]
    deadline_ms: Option<u64>,
    /// Auction bid increment.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Use epsilon scaling (same as engine auction:scaled).
    #[arg(long)]
    scaling: bool,
    #[arg(long, default_value_t = 4.0)]
    scale_factor: f64,
    #[arg(long, default_value_t = 0.0)]
    improvement_epsilon: f64,
    #[arg(long, value_enum, default_value_t = Reeval::Repair)]
    reevaluation: Reeval,
}

impl Tuning {
    fn options(&self, seed: u64) -> RunOptions {
        let defaults = RunOptions::default();
        RunOptions {
            seed,
            deadline: self.deadline_ms.map(Duration::from_millis),
            default_workers: self.workers.unwrap_or(defaults.default_workers),
            chunk: self.chunk,
            improvement_epsilon: self.improvement_epsilon,
            reevaluation: match self.reevaluation {
                Reeval::Repair => Reevaluation::Repair,
                Reeval::Rescan => Reevaluation::Rescan,
            },
            auction_epsilon: self.epsilon,
            scale_factor: self.scale_factor,
        }
    }

    fn adjust(&self, engine: Engine) -> Engine {
        match engine {
            Engine::Auction { .. } if self.scaling => Engine::Auction { scaling: true },
            e => e,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen {
            n,
            bound,
            seed,
            out,
        } => {
            let params = GeomParams::new(n, bound, seed)?;
            let digest = commands::gen(&params, &out)?;
            println!("sha256 {digest}  {}", out.display());
        }
        Command::Solve {
            engine,
            input,
            geom,
            seed,
            oracle,
            tuning,
        } => {
            let source = match (input, geom) {
                (Some(path), None) => InstanceSource::File(path),
                (None, Some(triple)) => InstanceSource::Geom(parse_geom_triple(&triple)?),
                _ => bail!("give exactly one of --input or --geom"),
            };
            let inst = source.load()?;
            let out = commands::solve(
                tuning.adjust(engine),
                &inst,
                &tuning.options(seed),
                oracle.is_some(),
            )?;
            println!("{}", serde_json::to_string(&out)?);
        }
        Command::Bench {
            spec,
            sizes,
            instances,
            reps,
            bound,
            base_seed,
            engines,
            oracle,
            parallel_cells,
            out,
            tuning,
        } => {
            let mut campaign = CampaignSpec::default();
            if let Some(path) = spec {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                campaign.apply_spec_text(&text)?;
            }
            if let Some(s) = sizes {
                campaign.sizes = parse_list(&s)?;
            }
            if let Some(k) = instances {
                campaign.instances_per_size = k;
            }
            if let Some(r) = reps {
                campaign.repetitions = r;
            }
            if let Some(b) = bound {
                campaign.bound = b;
            }
            if let Some(s) = base_seed {
                campaign.base_seed = s;
            }
            if let Some(e) = engines {
                campaign.set("engines", &e)?;
            }
            if oracle.is_some() {
                campaign.oracle = true;
            }
            if let Some(ms) = tuning.deadline_ms {
                campaign.deadline = Some(Duration::from_millis(ms));
            }
            campaign.engines = campaign.engines.iter().map(|&e| tuning.adjust(e)).collect();
            let failed = commands::bench(
                &campaign,
                &tuning.options(0),
                parallel_cells.max(1),
                out.as_deref(),
            )?;
            if failed > 0 {
                eprintln!("{failed} run(s) failed");
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
