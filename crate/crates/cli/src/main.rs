// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use spinq::config::parse_input;
use spinq::workflow::{self, RunOptions};
use spinq::Error;

const DEFAULT_OUT: &str = "spinq-out";

#[derive(Parser)]
#[command(name = "spinq", version, about = "Simulate 1D Heisenberg spin chains with quantum circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the workflow described by an input file.
    Run(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// Input file (`key: value` lines).
    input: PathBuf,
    /// Output directory. Overrides `output_dir` in the file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for random couplings and shot sampling. Overrides `rng_seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Measurement shots per point; 0 gives exact values. Overrides `shots`.
    #[arg(long)]
    shots: Option<u64>,
    /// Also write every executed circuit.
    #[arg(long)]
    export: bool,
    /// Add exact reference values to the CSV.
    #[arg(long)]
    ground_truth: bool,
    /// Fallback output directory when neither `--out` nor `output_dir` is given.
    #[arg(long, env = "SPINQ_OUTPUT_DIR", hide = true)]
    default_out: Option<PathBuf>,
}

/// Exit statuses by failure class.
mod status {
    pub const OTHER: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const UNSUPPORTED: u8 = 3;
    pub const TOO_LARGE: u8 = 4;
    pub const IO: u8 = 5;
}

fn classify(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e {
            Error::Config(_) => status::CONFIG,
            Error::Unsupported(_) => status::UNSUPPORTED,
            Error::TooLarge(_) | Error::Oracle(spinq::oracle::OracleError::TooLarge(_)) => status::TOO_LARGE,
            Error::Io { .. } => status::IO,
            _ => status::OTHER,
        };
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return status::IO;
    }
    status::OTHER
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("cannot read {}", args.input.display()))?;
    let mut config = parse_input(&text)
        .map_err(Error::from)
        .with_context(|| format!("{}", args.input.display()))?;
    if let Some(seed) = args.seed {
        config.rng_seed = Some(seed);
    }
    if let Some(shots) = args.shots {
        config.shots = shots;
    }
    let out_dir = args
        .out
        .or_else(|| config.output_dir.clone())
        .or(args.default_out)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let opts = RunOptions {
        out_dir: out_dir.clone(),
        export: args.export,
        ground_truth: args.ground_truth,
    };
    let artifacts = workflow::run(&config, &opts)?;
    for f in &artifacts.files {
        println!("{}", out_dir.join(f).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}
