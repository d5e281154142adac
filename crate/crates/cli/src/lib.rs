//! Command-line front end for `thermospin`: single-point queries, the two
//! figure sweeps, oracle verification and estimation simulations.
//!
//! Every command writes to an arbitrary [`Write`] so it can be driven from
//! tests; `main` only parses arguments and maps errors to exit codes
//! (0 success, 1 usage, 2 verification failure, 3 I/O).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod error;
pub mod figures;
pub mod format;
pub mod grid;
pub mod point;
pub mod simulate;
pub mod verify;

pub use error::{CliError, CliResult};

use grid::{Grid, Spacing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "thermospin", version, about = "Fisher information of a thermal spin in a tilted field")]
pub struct Cli {
    /// Worker threads for grid sweeps and replications (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quantum and classical Fisher information at one parameter point.
    Point(PointArgs),
    /// Normalized h_C and h_Q against delta for several spin lengths.
    Figure1(Figure1Args),
    /// A_tt, A_dd and F/H over a (delta, phi) grid.
    Figure2(Figure2Args),
    /// Compare closed forms with the brute-force oracle on random instances.
    Verify(VerifyArgs),
    /// Monte Carlo maximum-likelihood experiments from config files.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long = "twoS")]
    pub two_s: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long = "thetadot", default_value_t = 1.0, allow_hyphen_values = true)]
    pub theta_dot: f64,
    #[arg(long = "deltadot", default_value_t = 1.0, allow_hyphen_values = true)]
    pub delta_dot: f64,
    /// Measured axis relative to the field, or `opt`.
    #[arg(long, default_value = "opt", allow_hyphen_values = true)]
    pub phi: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Read theta, phi and gamma in degrees.
    #[arg(long)]
    pub degrees: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct DeltaGridArgs {
    #[arg(long = "delta-min", allow_hyphen_values = true)]
    pub delta_min: Option<f64>,
    #[arg(long = "delta-max", allow_hyphen_values = true)]
    pub delta_max: Option<f64>,
    #[arg(long = "delta-count")]
    pub delta_count: Option<usize>,
    #[arg(long = "delta-spacing", value_enum, default_value_t = Spacing::Linear)]
    pub delta_spacing: Spacing,
}

#[derive(Debug, Args)]
pub struct Figure1Args {
    #[arg(long = "twoS", value_delimiter = ',', default_values_t = [1u32, 2, 10])]
    pub two_s: Vec<u32>,
    #[command(flatten)]
    pub delta: DeltaGridArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Figure2Args {
    #[arg(long = "twoS", default_value_t = 2)]
    pub two_s: u32,
    #[command(flatten)]
    pub delta: DeltaGridArgs,
    #[arg(long = "phi-min", allow_hyphen_values = true)]
    pub phi_min: Option<f64>,
    #[arg(long = "phi-max", allow_hyphen_values = true)]
    pub phi_max: Option<f64>,
    #[arg(long = "phi-count", default_value_t = 40)]
    pub phi_count: usize,
    #[arg(long = "thetadot", default_value_t = 1.0, allow_hyphen_values = true)]
    pub theta_dot: f64,
    #[arg(long = "deltadot", default_value_t = 1.0, allow_hyphen_values = true)]
    pub delta_dot: f64,
    /// Read the phi range in degrees.
    #[arg(long)]
    pub degrees: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(required = true)]
    pub configs: Vec<PathBuf>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

pub const FIGURE1_DELTA: (f64, f64, usize) = (0.0, 20.0, 201);
pub const FIGURE2_DELTA: (f64, f64, usize) = (0.0, 10.0, 40);

impl DeltaGridArgs {
    fn grid(&self, default: (f64, f64, usize)) -> CliResult<Grid> {
        let min = self.delta_min.unwrap_or(match self.delta_spacing {
            Spacing::Log => 1e-2,
            Spacing::Linear => default.0,
        });
        Grid::new(
            "delta",
            min,
            self.delta_max.unwrap_or(default.1),
            self.delta_count.unwrap_or(default.2),
            self.delta_spacing,
        )
    }
}

fn angle(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}

impl PointArgs {
    pub fn query(&self) -> CliResult<point::PointQuery> {
        let phi = match self.phi.as_str() {
            "opt" => None,
            s => Some(angle(
                s.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("--phi expects a number or `opt`, got `{s}`")))?,
                self.degrees,
            )),
        };
        Ok(point::PointQuery {
            two_s: self.two_s,
            delta: self.delta,
            theta: angle(self.theta, self.degrees),
            theta_dot: self.theta_dot,
            delta_dot: self.delta_dot,
            phi,
            gamma: angle(self.gamma, self.degrees),
        })
    }
}

impl Figure2Args {
    pub fn phi_grid(&self) -> CliResult<Grid> {
        Grid::new(
            "phi",
            self.phi_min.map_or(0.0, |v| angle(v, self.degrees)),
            self.phi_max.map_or(std::f64::consts::PI, |v| angle(v, self.degrees)),
            self.phi_count,
            Spacing::Linear,
        )
    }
}

fn with_output<F>(path: Option<&PathBuf>, out: &mut dyn Write, body: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::io(p, e))?;
            let mut w = BufWriter::new(file);
            body(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::io(p, e))
        }
        None => body(out).map_err(CliError::stdout),
    }
}

/// Execute one parsed command line.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    dispatch(cli.command, out, &pool)
}

fn dispatch(command: Command, out: &mut dyn Write, pool: &rayon::ThreadPool) -> CliResult<()> {
    match command {
        Command::Point(args) => {
            let report = point::evaluate(&args.query()?)?;
            point::write_report(out, &report, args.format).map_err(CliError::stdout)
        }
        Command::Figure1(args) => {
            let grid = args.delta.grid(FIGURE1_DELTA)?;
            let rows = pool.install(|| figures::figure1(&args.two_s, &grid))?;
            let notes: Vec<String> = figures::FIGURE1_NOTES.iter().map(|s| s.to_string()).collect();
            with_output(args.output.as_ref(), out, |w| {
                figures::write_rows(w, &rows, &notes, args.format)
            })
        }
        Command::Figure2(args) => {
            let (delta, phi) = (args.delta.grid(FIGURE2_DELTA)?, args.phi_grid()?);
            let rows = pool.install(|| {
                figures::figure2(args.two_s, &delta, &phi, args.theta_dot, args.delta_dot)
            })?;
            let notes = figures::figure2_notes(args.two_s, args.theta_dot, args.delta_dot);
            with_output(args.output.as_ref(), out, |w| {
                figures::write_rows(w, &rows, &notes, args.format)
            })
        }
        Command::Verify(args) => {
            let summaries =
                pool.install(|| verify::run_all(args.trials, args.seed, thermospin::optimal_angle))?;
            let ok = verify::write_report(out, &summaries, args.seed).map_err(CliError::stdout)?;
            if ok {
                Ok(())
            } else {
                let failed: Vec<&str> = summaries
                    .iter()
                    .filter(|s| !s.passed())
                    .map(|s| s.check.name())
                    .collect();
                Err(CliError::Verification(failed.join(", ")))
            }
        }
        Command::Simulate(args) => {
            let results = pool.install(|| simulate::simulate(&args.configs))?;
            with_output(args.output.as_ref(), out, |w| simulate::write_results(w, &results))
        }
    }
}
