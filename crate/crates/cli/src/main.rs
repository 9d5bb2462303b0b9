//! pppkit: Gaussian envelopes, Monte-Carlo validation and capacity sweeps for
//! Poisson-field interference, from presets or JSON configs.

mod args;
mod commands;
mod output;
mod run_config;

use clap::{Parser, Subcommand};
use pppkit_core::error::Error;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pppkit",
    version,
    about = "Interference distribution envelopes, simulation and capacity bounds for Poisson transmitter fields",
    after_help = "Figure presets: fig1-{g1,g2}[-nofading], appendix-d-{g1,g2}, fig2[-{g1,g2}-a{3,5}[-m1]], \
                  sim-lambda10, fig3-{g1,g2}, fig4-{g1,g2}. The PPPKIT_THREADS environment \
                  variable caps worker parallelism."
)]
struct Cli {
    /// JSON run configuration (model/task/output/seed sections)
    #[arg(long, global = true)]
    config: Option<String>,

    /// Random seed (overrides the config file)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output path prefix (files get .csv/.json suffixes)
    #[arg(long, global = true)]
    out: Option<String>,

    /// Stdout summary format
    #[arg(long, global = true, value_parser = ["csv", "json"], default_value = "json")]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the stationary path-loss constant table and check it against
    /// the embedded reference values
    Table1(commands::table1::Table1Args),
    /// Tabulate CDF envelopes Q±(x) for one model at several intensities
    Bounds(commands::bounds::BoundsArgs),
    /// Simulate interference, compare the empirical CDF with its envelope
    Simulate(commands::simulate::SimulateArgs),
    /// Outage-capacity sweep: envelope bounds vs simulated rate across λ
    Outage(commands::outage::OutageArgs),
    /// Ergodic sum-capacity sweep: envelope bounds vs simulated mean rate
    Sumcap(commands::sumcap::SumcapArgs),
    /// Parse and validate a configuration, reporting model diagnostics
    Validate(commands::validate::ValidateArgs),
}

/// Shared global flags, resolved once.
pub(crate) struct Ctx {
    pub config: Option<run_config::RunConfig>,
    pub seed: u64,
    pub out: Option<String>,
    pub json_summary: bool,
}

fn init_threads() {
    if let Ok(v) = std::env::var("PPPKIT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    init_threads();
    let config = match &cli.config {
        Some(path) => Some(run_config::RunConfig::load(path)?),
        None => None,
    };
    let seed = cli.seed.or(config.as_ref().and_then(|c| c.seed)).unwrap_or(0);
    let out = cli
        .out
        .clone()
        .or_else(|| config.as_ref().and_then(|c| c.output.as_ref().and_then(|o| o.path.clone())));
    let ctx = Ctx { config, seed, out, json_summary: cli.format == "json" };
    match cli.command {
        Command::Table1(args) => commands::table1::run(&ctx, &args),
        Command::Bounds(args) => commands::bounds::run(&ctx, &args),
        Command::Simulate(args) => commands::simulate::run(&ctx, &args),
        Command::Outage(args) => commands::outage::run(&ctx, &args),
        Command::Sumcap(args) => commands::sumcap::run(&ctx, &args),
        Command::Validate(args) => commands::validate::run(&ctx, &args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            // malformed input and invalid models are usage errors; numerical
            // failures are runtime errors
            match e {
                Error::Config(_) | Error::Validation(_) | Error::Domain(_) | Error::Unsupported(_) => {
                    ExitCode::from(2)
                }
                Error::NonConvergent(_) => ExitCode::from(1),
            }
        }
    }
}
