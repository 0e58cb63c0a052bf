//! `typea-stab`: every analysis as a subcommand writing deterministic CSV
//! (or JSON) plus a `manifest.json` with a checksum per emitted file.

mod cmds;
mod goldens;
mod manifest;
mod output;
mod ranges;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use typea_stab_core::Error;

use crate::ranges::{Range, Window};

/// Exit code for model parse/validation failures.
const EXIT_VALIDATION: u8 = 3;
/// Exit code for numerical failures (quadrature, root finding, resonance).
const EXIT_NUMERICAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "typea-stab",
    version,
    about = "Transient stability analysis of a fixed-speed induction-generator wind turbine"
)]
pub struct Cli {
    /// Model definition TOML file.
    #[arg(long, global = true, default_value = "fixtures/paper.toml")]
    pub(crate) model: PathBuf,

    /// Directory the CSVs and manifest are written to.
    #[arg(long, global = true, default_value = "./out")]
    pub(crate) output_dir: PathBuf,

    /// Output format for data files.
    #[arg(long, global = true, value_enum, default_value_t = output::Format::Csv)]
    pub(crate) format: output::Format,

    /// Worker threads for grid and family evaluation; 0 = available
    /// parallelism. Falls back to TYPEA_STAB_THREADS, then to all cores.
    #[arg(long, global = true)]
    pub(crate) threads: Option<usize>,

    #[command(subcommand)]
    pub(crate) command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate the model file and write the validation report.
    Validate,
    /// Electrical torque plus one mechanical torque curve per wind velocity.
    TorqueCurves(TorqueCurvesArgs),
    /// Locate and classify equilibria for each wind velocity.
    Equilibria(EquilibriaArgs),
    /// Integrate the slip swing equation from an initial slip.
    Simulate(SimulateArgs),
    /// Sample the Lyapunov candidate and its orbital derivative on a window.
    Lyapunov(LyapunovArgs),
    /// Classify the (slip, wind) plane: field value, sign, basin membership.
    Roa(RoaArgs),
    /// Electrical torque family over compensation susceptance.
    SweepComp(SweepCompArgs),
    /// Electrical torque family over the rotor-resistance multiplier.
    SweepRotor(SweepRotorArgs),
    /// Time the hot paths and write bench.csv.
    Bench(BenchArgs),
    /// Re-run every golden-producing command and report drift.
    RegenGoldens(RegenGoldensArgs),
}

#[derive(Args, Debug)]
pub struct TorqueCurvesArgs {
    /// Wind velocities (pu), comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.6,0.8,0.9,1.0,1.1")]
    pub(crate) v: Vec<f64>,
    /// Slip axis as lo:hi:n.
    #[arg(long, allow_hyphen_values = true, default_value = "0:0.4:401")]
    pub(crate) s: Range,
}

#[derive(Args, Debug)]
pub struct EquilibriaArgs {
    /// Wind velocities (pu), comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.6,0.8,0.9,1.0,1.1")]
    pub(crate) v: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Wind velocity (pu).
    #[arg(long)]
    pub(crate) v: f64,
    /// Initial slip (pu).
    #[arg(long, allow_hyphen_values = true)]
    pub(crate) s_init: f64,
    /// Integration step (pu time).
    #[arg(long, default_value_t = 1e-3)]
    pub(crate) step: f64,
    /// Integration horizon (pu time).
    #[arg(long, default_value_t = 50.0)]
    pub(crate) t_end: f64,
}

#[derive(Args, Debug)]
pub struct LyapunovArgs {
    /// Wind velocity (pu).
    #[arg(long)]
    pub(crate) v: f64,
    /// Displacement window around the stable equilibrium, lo:hi.
    #[arg(long, allow_hyphen_values = true, default_value = "-0.01:0.01")]
    pub(crate) window: Window,
    /// Number of samples across the window.
    #[arg(long, default_value_t = 401)]
    pub(crate) n: usize,
}

#[derive(Args, Debug)]
pub struct RoaArgs {
    /// Slip axis as lo:hi:n.
    #[arg(long, allow_hyphen_values = true, default_value = "0:0.5:15")]
    pub(crate) s: Range,
    /// Wind axis as lo:hi:n.
    #[arg(long, default_value = "0.6:1.2:12")]
    pub(crate) v: Range,
}

#[derive(Args, Debug)]
pub struct SweepCompArgs {
    /// Compensation susceptances (pu), comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,0.1,0.2,0.25")]
    pub(crate) yc: Vec<f64>,
    /// Slip axis as lo:hi:n.
    #[arg(long, allow_hyphen_values = true, default_value = "0:0.4:401")]
    pub(crate) s: Range,
    /// Permit susceptances beyond parallel resonance; output is split at the
    /// singularity.
    #[arg(long)]
    pub(crate) allow_past_resonance: bool,
    /// Also sweep the basin upper edge at this wind velocity.
    #[arg(long)]
    pub(crate) basin_v: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SweepRotorArgs {
    /// Rotor-resistance multipliers (>= 1), comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
    pub(crate) r: Vec<f64>,
    /// Slip axis as lo:hi:n.
    #[arg(long, allow_hyphen_values = true, default_value = "0:0.4:401")]
    pub(crate) s: Range,
    /// Also sweep the basin upper edge at this wind velocity.
    #[arg(long)]
    pub(crate) basin_v: Option<f64>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Small sizing for smoke runs.
    #[arg(long)]
    pub(crate) quick: bool,
}

#[derive(Args, Debug)]
pub struct RegenGoldensArgs {
    /// Golden directory (defaults to ./goldens next to the fixtures).
    #[arg(long, default_value = "goldens")]
    pub(crate) goldens_dir: PathBuf,
    /// Compare only; leave the golden files untouched.
    #[arg(long)]
    pub(crate) check: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("TYPEA_STAB_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n > 0 {
            builder = builder.num_threads(n);
        }
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("typea-stab: thread pool: {e}");
            return ExitCode::from(EXIT_NUMERICAL);
        }
    };
    match pool.install(|| cmds::run(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("typea-stab: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::Validation(_) => EXIT_VALIDATION,
                _ => EXIT_NUMERICAL,
            })
        }
    }
}
