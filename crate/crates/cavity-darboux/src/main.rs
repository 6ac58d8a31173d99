use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cavity_darboux::config::SimConfig;
use cavity_darboux::sim::{self, RunError};
use cavity_darboux::verify::run_verify;

/// Collapse and revival of Rabi oscillations under one-fold Darboux
/// transformations of the classical drive field.
#[derive(Parser)]
#[command(name = "cavity-darboux", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Standard Jaynes-Cummings inversion over a coherent state.
    Jc(CommonArgs),
    /// Modified inversion and transformed potential for one Pauli choice.
    Darboux(DarbouxArgs),
    /// Run the residual/invariant suite and print a pass/fail table.
    Verify,
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key=value configuration file; flags given here win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    /// Output directory for CSV/SVG artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit only CSV (unless --svg is also given).
    #[arg(long)]
    csv: bool,
    /// Emit only SVG (unless --csv is also given).
    #[arg(long)]
    svg: bool,
    /// Log-scale the potential panel's y axis.
    #[arg(long)]
    logy: bool,
}

#[derive(Args)]
struct DarbouxArgs {
    /// Pauli choice driving the transformation.
    #[arg(long, value_parser = ["1", "2", "3"])]
    sigma: String,
    #[command(flatten)]
    common: CommonArgs,
}

fn build_config(common: &CommonArgs, sigma: Option<&str>) -> Result<SimConfig, RunError> {
    let mut cfg = match &common.config {
        Some(path) => SimConfig::load(path)?,
        None => SimConfig::default(),
    };
    match sigma {
        Some(s) => cfg.set("sigma", s)?,
        None => cfg.sigma = None,
    }
    if let Some(t0) = common.t0 {
        cfg.t0 = t0;
    }
    if let Some(t1) = common.t1 {
        cfg.t1 = t1;
    }
    if let Some(samples) = common.samples {
        cfg.samples = samples;
    }
    if let Some(out) = &common.out {
        cfg.out_dir = out.clone();
    }
    if common.csv || common.svg {
        cfg.write_csv = common.csv;
        cfg.write_svg = common.svg;
    }
    if common.logy {
        cfg.logy = true;
    }
    Ok(cfg)
}

fn execute(common: &CommonArgs, sigma: Option<&str>) -> ExitCode {
    let cfg = match build_config(common, sigma) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match sim::run(&cfg) {
        Ok(out) => {
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(RunError::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Jc(common) => execute(&common, None),
        Command::Darboux(args) => execute(&args.common, Some(&args.sigma)),
        Command::Verify => {
            if run_verify() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
    }
}
