use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{CommandFactory, FromArgMatches, Parser, ValueEnum};
use magchain_core::harness::{
    columns, render_records, run_experiment, write_records, ExperimentConfig, ExperimentKind, OutputFormat,
    ResultRecord,
};
use magchain_core::Error;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Experiment {
    Sweep,
    CompareField,
    Align,
    Modes,
    RingEnergy,
}

impl From<Experiment> for ExperimentKind {
    fn from(e: Experiment) -> Self {
        match e {
            Experiment::Sweep => ExperimentKind::Sweep,
            Experiment::CompareField => ExperimentKind::CompareField,
            Experiment::Align => ExperimentKind::Align,
            Experiment::Modes => ExperimentKind::Modes,
            Experiment::RingEnergy => ExperimentKind::RingEnergy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Runs magnet-chain experiments and writes plot-ready records.
#[derive(Debug, Parser)]
#[command(name = "magchain", version)]
struct Cli {
    /// Experiment to run.
    #[arg(value_enum)]
    experiment: Experiment,
    /// JSON config file; flags given on the command line override it.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Chain sizes, comma separated or repeated.
    #[arg(long = "n", value_delimiter = ',', num_args = 1..)]
    n: Vec<usize>,
    /// Smallest size of an evenly spaced range.
    #[arg(long, requires = "n_max", conflicts_with = "n")]
    n_min: Option<usize>,
    /// Largest size of the range.
    #[arg(long, requires = "n_min")]
    n_max: Option<usize>,
    /// Spacing of the range.
    #[arg(long, default_value_t = 8, requires = "n_min")]
    n_step: usize,
    /// Output file; records go to stdout when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the experiment's pass threshold.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Magnet radius in metres.
    #[arg(long, value_name = "METERS")]
    a: Option<f64>,
    /// Characteristic field in tesla.
    #[arg(long = "B", value_name = "TESLA")]
    b: Option<f64>,
    /// Density in kg/m³.
    #[arg(long, value_name = "KGM3")]
    rho: Option<f64>,
}

fn columns_help() -> String {
    let mut s = String::from(
        "CSV columns (every row starts with kind,row,n,index and ends with check_value,tolerance,passed):\n",
    );
    for kind in ExperimentKind::ALL {
        let cols = columns(kind);
        s.push_str(&format!("  {:<14} {}\n", kind.name(), cols[4..cols.len() - 3].join(",")));
    }
    s.push_str(
        "\nChecks pass when check_value <= tolerance:\n\
         \x20 sweep          point rows: |per-magnet error| vs 40/n^4; summary row: |slope + 4| vs 0.3\n\
         \x20 compare-field  relative field error vs 1e-3\n\
         \x20 align          max angle to tangent (rad) vs 0.02\n\
         \x20 modes          relative frequency error vs 0.05\n\
         \x20 ring-energy    |discrete - closed form| vs 40/n^3 (--tolerance sets the coefficient)\n\
         \nExit codes: 0 success, 1 a check failed, 2 usage error, 3 numerical failure.\n",
    );
    s
}

impl Cli {
    fn into_config(self) -> anyhow::Result<ExperimentConfig> {
        let kind = ExperimentKind::from(self.experiment);
        let mut cfg = match &self.config {
            Some(path) => {
                let cfg = ExperimentConfig::load(path)?;
                if cfg.kind != kind {
                    return Err(Error::InvalidParameter(format!(
                        "config file is for {}, not {kind}",
                        cfg.kind
                    ))
                    .into());
                }
                cfg
            }
            None => ExperimentConfig::new(kind),
        };
        if !self.n.is_empty() {
            cfg.ns = self.n;
        }
        if let (Some(lo), Some(hi)) = (self.n_min, self.n_max) {
            if lo > hi || self.n_step == 0 {
                return Err(Error::InvalidParameter("need n-min <= n-max and a positive n-step".into()).into());
            }
            cfg.ns = (lo..=hi).step_by(self.n_step).collect();
        }
        if let Some(out) = self.out {
            cfg.out = Some(out);
        }
        if let Some(f) = self.format {
            cfg.format = match f {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if self.tolerance.is_some() {
            cfg.tolerance = self.tolerance;
        }
        if let Some(a) = self.a {
            cfg.spec.a = a;
        }
        if let Some(b) = self.b {
            cfg.spec.b = b;
        }
        if let Some(rho) = self.rho {
            cfg.spec.rho = rho;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(cfg: &ExperimentConfig, records: &[ResultRecord]) -> anyhow::Result<()> {
    match &cfg.out {
        Some(path) => write_records(cfg.kind, records, path, cfg.format)?,
        None => print!("{}", render_records(cfg.kind, records, cfg.format)?),
    }
    Ok(())
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_numerical() => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

fn run(cli: Cli) -> Result<u8, anyhow::Error> {
    let cfg = cli.into_config()?;
    let records = match run_experiment(&cfg) {
        Ok(r) => r,
        Err(failure) => {
            emit(&cfg, &failure.partial).context("writing partial results")?;
            return Err(anyhow::Error::new(failure.error).context(format!("{} failed", cfg.kind)));
        }
    };
    emit(&cfg, &records)?;
    let failed = records.iter().filter(|r| !r.check.passed).count();
    eprintln!("{}: {} records, {failed} failed checks", cfg.kind, records.len());
    Ok(if failed > 0 { EXIT_CHECK_FAILED } else { 0 })
}

fn main() -> ExitCode {
    let matches = Cli::command().after_long_help(columns_help()).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
