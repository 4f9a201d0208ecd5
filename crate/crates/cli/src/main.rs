mod cnvd;
mod config;
mod error;
mod lift_check;
mod plot;
mod selftest;
mod sweep;

use clap::{Parser, Subcommand};
use config::SweepConfig;
use error::{validation, CliResult};
use std::path::PathBuf;
use std::process::ExitCode;
use stsc::{CnvdMode, FadingModel, Scheme};

#[derive(Parser, Debug)]
#[command(name = "stsc", version, about = "Space-time storage codes: sweeps, CNVD checks and plots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monte-Carlo BER/FER sweep over an SNR grid.
    Sweep(SweepArgs),
    /// Minimum nonzero determinants over helper subsets.
    Cnvd {
        #[arg(long, default_value = "mac-golden-twist")]
        scheme: String,
        #[arg(long, default_value = "over-codewords")]
        mode: CnvdMode,
    },
    /// Checks the coset and constellation lifts are bijective.
    LiftCheck {
        #[arg(long, default_value_t = 4)]
        t_max: u32,
    },
    /// Runs the built-in consistency checks.
    Selftest,
    /// Plots BER curves from sweep CSVs into an SVG.
    Plot {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long, default_value_t = stsc::storage::DEFAULT_FRAGMENT_BITS)]
        fragment_bits: usize,
    },
}

#[derive(clap::Args, Debug)]
struct SweepArgs {
    /// JSON config file (or a sweep sidecar); flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// ssm, dsm, mac-golden or mac-golden-notwist (repeatable)
    #[arg(long = "scheme")]
    schemes: Vec<Scheme>,
    /// slow or fast (repeatable)
    #[arg(long = "fading")]
    fading: Vec<FadingModel>,
    #[arg(long, allow_negative_numbers = true)]
    snr_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    snr_stop: Option<f64>,
    #[arg(long)]
    snr_step: Option<f64>,
    /// Trials per SNR point
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    nr: Option<usize>,
    /// CSV output path; a .meta.json sidecar is written next to it
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SweepArgs {
    fn resolve(self) -> CliResult<SweepConfig> {
        let mut c = match &self.config {
            Some(p) => SweepConfig::load(p).map_err(validation)?,
            None => SweepConfig::default(),
        };
        if !self.schemes.is_empty() {
            c.schemes = self.schemes;
        }
        if !self.fading.is_empty() {
            c.fading = self.fading;
        }
        c.snr_start = self.snr_start.unwrap_or(c.snr_start);
        c.snr_stop = self.snr_stop.unwrap_or(c.snr_stop);
        c.snr_step = self.snr_step.unwrap_or(c.snr_step);
        c.trials = self.trials.unwrap_or(c.trials);
        c.seed = self.seed.unwrap_or(c.seed);
        c.nr = self.nr.unwrap_or(c.nr);
        if self.out.is_some() {
            c.out = self.out;
        }
        Ok(c)
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Sweep(args) => sweep::cmd_sweep(&args.resolve()?),
        Command::Cnvd { scheme, mode } => cnvd::cmd_cnvd(&scheme, mode),
        Command::LiftCheck { t_max } => lift_check::cmd_lift_check(t_max),
        Command::Selftest => selftest::cmd_selftest(),
        Command::Plot {
            inputs,
            out,
            fragment_bits,
        } => plot::cmd_plot(&inputs, &out, fragment_bits),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
