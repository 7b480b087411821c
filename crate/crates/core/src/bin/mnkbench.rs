use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use mnkbench::cli::{self, ExperimentConfig};
use mnkbench::optimizers::Algorithm;

/// MNK-landscape benchmark: instance grids, exact Pareto sets, optimizer
/// campaigns and runtime models.
#[derive(Parser)]
#[command(name = "mnkbench", version)]
struct Args {
    /// JSON experiment configuration; unspecified fields use the defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Overrides `master_seed` from the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the instance grid.
    Gen,
    /// Enumerate the exact Pareto set of every instance.
    Enumerate,
    /// Write reports/features.csv.
    Features,
    /// Execute the missing runs of one algorithm.
    Run {
        #[arg(value_parser = ["mboa", "nsga3"])]
        algorithm: String,
    },
    /// Write reports/ert.csv.
    Ert,
    /// Write reports/regression.json.
    Regress,
    /// Write reports/pmf_view/*.csv from the mBOA models.
    PmfView,
    /// All reports.
    Report,
    /// The complete pipeline.
    All,
}

fn run(args: Args) -> anyhow::Result<()> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::load(path)
            .with_context(|| format!("loading configuration {}", path.display()))?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    config.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        anyhow::ensure!(jobs > 0, "--jobs must be positive");
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build()?;
    pool.install(|| -> anyhow::Result<()> {
        match args.command {
            Command::Gen => {
                let written = cli::cmd_gen(&config)?;
                log::info!("{} instances written", written.len());
            }
            Command::Enumerate => cli::cmd_enumerate(&config)?,
            Command::Features => {
                cli::cmd_features(&config)?;
            }
            Command::Run { algorithm } => {
                let algorithm: Algorithm = algorithm.parse()?;
                let summary = cli::cmd_run(&config, algorithm)?;
                log::info!(
                    "{algorithm}: {} runs executed, {} already on disk",
                    summary.executed,
                    summary.skipped
                );
            }
            Command::Ert => {
                cli::cmd_ert(&config)?;
            }
            Command::Regress => {
                cli::cmd_regress(&config)?;
            }
            Command::PmfView => {
                cli::cmd_pmf_view(&config)?;
            }
            Command::Report => cli::cmd_report(&config)?,
            Command::All => cli::cmd_all(&config)?,
        }
        Ok(())
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
