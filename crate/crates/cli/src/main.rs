use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uavgrid::channel::EnvironmentKind;
use uavgrid::config::Overrides;

mod commands;
mod report;

/// Size a renewable-powered UAV-swarm coverage deployment.
#[derive(Debug, Parser)]
#[command(name = "uavgrid", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search coverage radii and report the most cost-efficient configuration.
    Size(RunArgs),
    /// Emit efficiency and cost for every radius of the sweep.
    Sweep(RunArgs),
    /// Check inputs and print the resolved parameter set.
    Validate(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnvArg {
    Suburban,
    Urban,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Scenario file (TOML).
    #[arg(long)]
    scenario: PathBuf,
    /// Total budget, EUR.
    #[arg(long)]
    budget: Option<f64>,
    /// Antenna efficiency in (0, 1].
    #[arg(long)]
    aeff: Option<f64>,
    #[arg(long, value_enum)]
    env: Option<EnvArg>,
    /// Smallest coverage radius, m.
    #[arg(long)]
    dlb: Option<f64>,
    /// Largest coverage radius, m (`inf` sweeps until coverage fails).
    #[arg(long)]
    dub: Option<f64>,
    /// Radius increment, m.
    #[arg(long)]
    step: Option<f64>,
    /// Size against this quantile of the traffic distribution.
    #[arg(long)]
    provision_level: Option<f64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            budget_eur: self.budget,
            a_eff: self.aeff,
            environment: self.env.map(|e| match e {
                EnvArg::Suburban => EnvironmentKind::Suburban,
                EnvArg::Urban => EnvironmentKind::Urban,
            }),
            d_lb: self.dlb,
            d_ub: self.dub,
            step: self.step,
            provision_level: self.provision_level,
        }
    }
}

/// Process exit codes.
pub mod exit {
    pub const FEASIBLE: u8 = 0;
    pub const INTERNAL: u8 = 1;
    pub const COVERAGE_INFEASIBLE: u8 = 2;
    pub const BUDGET_INFEASIBLE: u8 = 3;
    pub const INPUT: u8 = 4;
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Size(args) => commands::size(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Validate(args) => commands::validate(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::classify(&err))
        }
    }
}
