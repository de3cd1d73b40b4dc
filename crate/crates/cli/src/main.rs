//! `zipfmix`: Zipf fitting, mixture sampling, identity checks, corpus analysis
//! and figure data.
//!
//! Exit codes: 0 success, 1 a statistical or identity check failed, 2 bad input
//! or a numerical failure.

mod analyze;
mod error;
mod output;
mod plotdata;
mod sample;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zipfmix::corpus::read_table;
use zipfmix::distributions::{zipf_fit_mle, DEFAULT_SEED};

use crate::error::{CliError, CliResult};
use crate::output::{Context, Format};

#[derive(Parser)]
#[command(
    name = "zipfmix",
    version,
    about = "Zipf law fitting, mixture sampling and corpus analysis"
)]
struct Cli {
    /// Random seed; printed in every report header.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the Zipf exponent to a frequency-of-frequencies table.
    Fit {
        #[arg(long)]
        input: PathBuf,
    },
    /// Per-chapter fit and KS test of the ZTP rates against the mixing law.
    Analyze(analyze::AnalyzeArgs),
    /// Check the mixture identities by quadrature.
    Verify(verify::VerifyArgs),
    /// Draw from one of the samplers, one value per line.
    Sample(sample::SampleArgs),
    /// Emit curve points for the pmf, mixing-density and CDF-overlay figures.
    Plotdata(plotdata::PlotArgs),
}

fn cmd_fit(ctx: &Context, input: &PathBuf) -> CliResult {
    let table = read_table(input).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let fit = zipf_fit_mle(&table)?;
    ctx.emit("fit", &[("input", input.display().to_string())], &[fit])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context {
        seed: cli.seed,
        format: cli.format,
        output: cli.output,
    };
    let result = match &cli.command {
        Command::Fit { input } => cmd_fit(&ctx, input),
        Command::Analyze(args) => analyze::run(&ctx, args),
        Command::Verify(args) => verify::run(&ctx, args),
        Command::Sample(args) => sample::run(&ctx, args),
        Command::Plotdata(args) => plotdata::run(&ctx, args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zipfmix: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
