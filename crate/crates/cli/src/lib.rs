//! Command-line front end: config parsing, running experiments, writing results.

pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use robust_bandits::harness::presets;
use robust_bandits::{run_experiment, ExperimentConfig, ExperimentReport};

pub use config::{parse_config, Overrides, RawConfig};
pub use error::CliError;
pub use output::{emit_results, Format};

#[derive(Debug, Parser)]
#[command(name = "rbandit", version, about = "Corrupted stochastic bandit experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the experiment described by a TOML or JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Run a named preset scenario.
    Bench {
        preset: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// List preset names.
    Presets,
}

#[derive(Debug, Clone, Args)]
pub struct RunOpts {
    #[arg(long)]
    pub horizon: Option<u64>,
    #[arg(long)]
    pub seed_count: Option<u64>,
    #[arg(long)]
    pub master_seed: Option<u64>,
    /// Results file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub learner: Option<String>,
    #[arg(long)]
    pub adversary: Option<String>,
    #[arg(long)]
    pub budget: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub workers: Option<usize>,
}

impl RunOpts {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            horizon: self.horizon,
            seed_count: self.seed_count,
            master_seed: self.master_seed,
            learner: self.learner.clone(),
            adversary: self.adversary.clone(),
            budget: self.budget,
            delta: self.delta,
            workers: self.workers,
        }
    }
}

fn execute(config: &ExperimentConfig, opts: &RunOpts) -> Result<ExperimentReport, CliError> {
    let report = run_experiment(config)?;
    emit_results(&report, config.instance.num_arms(), opts.format, opts.out.as_deref())?;
    eprint!("{}", output::summary(&report));
    let failed = report.failures().count();
    if failed > 0 {
        return Err(CliError::Invariant { failed, total: report.outcomes.len() });
    }
    Ok(report)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { config, opts } => {
            let cfg = parse_config(&config, &opts.overrides())?;
            execute(&cfg, &opts).map(|_| ())
        }
        Command::Bench { preset, opts } => {
            let base = presets::preset(&preset).ok_or_else(|| {
                CliError::config("preset", format!("unknown preset `{preset}`; one of {}", presets::PRESETS.join(", ")))
            })?;
            let cfg = config::override_preset(base, &opts.overrides())?;
            execute(&cfg, &opts).map(|_| ())
        }
        Command::Presets => {
            for name in presets::PRESETS {
                println!("{name}");
            }
            Ok(())
        }
    }
}
