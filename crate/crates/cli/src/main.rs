//! `killing-weyl`: verification runs over homogeneous Weyl geometries.
//! Reports go to stdout as JSON; diagnostics go to stderr.

mod commands;
mod error;
mod geometry;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use killing_weyl::homgeo::DEFAULT_GT_TOL;
use killing_weyl::killing::search::PARAMETER_NAMES;
use killing_weyl::killing::{SearchOptions, FLATNESS_TOL};

use crate::commands::KillingFlags;
use crate::error::CliError;
use crate::report::{RunReport, Verdict};

#[derive(Debug, Parser)]
#[command(name = "killing-weyl", version, about = "Killing spinors on homogeneous 3-dimensional Weyl geometries")]
struct Cli {
    /// Seed of the run's random stream.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Random sweeps of the pointwise Clifford and tensor identities.
    VerifyAlgebra {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Gauduchon–Tod residuals and Killing-connection flatness of a geometry file.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GT_TOL)]
        tol: f64,
    },
    /// Builds the Killing basis by transport and checks holonomy and the Killing equation.
    Killing {
        file: PathBuf,
        #[arg(long, default_value_t = 50)]
        loops: usize,
        #[arg(long = "fd-step", default_value_t = 1e-5)]
        fd_step: f64,
        #[arg(long = "flat-tol", default_value_t = FLATNESS_TOL)]
        flat_tol: f64,
    },
    /// Newton search for Gauduchon–Tod parameters (λ1, λ2, λ3, θ3, β).
    SearchGt {
        #[arg(long, value_delimiter = ',', num_args = 1..=5, allow_negative_numbers = true,
              default_values_t = [2.2, 1.9, 2.1, 0.05, 0.4])]
        x0: Vec<f64>,
        /// Pinned Milnor parameter, e.g. `λ1=2.2` or `lambda2`.
        #[arg(long, default_value = "λ1")]
        pin: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = 50)]
        max_iter: usize,
    },
}

/// Parses `λk[=v]` / `lambdak[=v]` into a parameter index and optional value.
fn parse_pin(pin: &str) -> Result<(usize, Option<f64>), CliError> {
    let (name, value) = match pin.split_once('=') {
        Some((n, v)) => {
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad pin value in `{pin}`")))?;
            (n.trim(), Some(v))
        }
        None => (pin.trim(), None),
    };
    let digit = name
        .strip_prefix("λ")
        .or_else(|| name.strip_prefix("lambda"))
        .or_else(|| name.strip_prefix('l'));
    match digit {
        Some("1") => Ok((0, value)),
        Some("2") => Ok((1, value)),
        Some("3") => Ok((2, value)),
        _ => Err(CliError::Usage(format!(
            "pin must name one of {}, got `{pin}`",
            PARAMETER_NAMES[..3].join(", ")
        ))),
    }
}

fn run(cli: &Cli) -> Result<Vec<report::Section>, CliError> {
    let mut rng = commands::run_rng(cli.seed);
    match &cli.command {
        Command::VerifyAlgebra { trials, tol } => commands::verify_algebra(*trials, *tol, &mut rng),
        Command::Analyze { file, tol } => commands::analyze_file(file, *tol),
        Command::Killing {
            file,
            loops,
            fd_step,
            flat_tol,
        } => {
            if !(*fd_step > 0.0) {
                return Err(CliError::Usage("--fd-step must be positive".into()));
            }
            let flags = KillingFlags {
                loops: *loops,
                fd_step: *fd_step,
                flat_tol: *flat_tol,
            };
            commands::killing_file(file, &flags, &mut rng)
        }
        Command::SearchGt { x0, pin, tol, max_iter } => {
            let mut start: [f64; 5] = x0
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Usage("--x0 takes five comma-separated numbers".into()))?;
            let (index, value) = parse_pin(pin)?;
            if let Some(v) = value {
                start[index] = v;
            }
            let options = SearchOptions {
                tolerance: *tol,
                max_iterations: *max_iter,
                ..SearchOptions::default()
            };
            commands::search_gt(start, index, &options)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(sections) => {
            let elapsed = start.elapsed().as_millis() as u64;
            let report = RunReport::new(cli.seed, sections, elapsed);
            println!("{}", report.to_json());
            let failed: Vec<_> = report.sections.iter().filter(|s| !s.pass).map(|s| s.name.as_str()).collect();
            if report.verdict == Verdict::Pass {
                eprintln!("verdict: pass ({} sections, {elapsed} ms)", report.sections.len());
                ExitCode::SUCCESS
            } else {
                eprintln!("verdict: fail ({})", failed.join(", "));
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
