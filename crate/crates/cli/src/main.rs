mod commands;
mod output;
mod ranges;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;
use ranges::{IntRange, Interval, RealSpec};

#[derive(Parser, Debug)]
#[command(name = "susyrad", version, about = "Supersymmetric radial eigenfamilies, their maps, and geonium")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Defect, anharmonicity and trap configuration (TOML).
    #[arg(long, env = "SUSYRAD_CONFIG", global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Energy table for a family of states.
    Spectrum(SpectrumArgs),
    /// Amplitude of one state on a grid.
    Wavefunction(WavefunctionArgs),
    /// Partner potentials and spectra of a superpotential.
    SusyPair(SusyPairArgs),
    /// Coulomb to oscillator maps.
    Map(MapArgs),
    /// Penning-trap frequencies, operating point and geonium levels.
    Trap(TrapArgs),
    /// Run the invariant suite and print a pass/fail table.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Coulomb,
    Oscillator,
    Defect,
    Anharmonic,
    /// Three-dimensional hydrogen `R_nl(r)` (wavefunction only).
    Hydrogen,
}

impl Family {
    pub fn is_oscillator_like(self) -> bool {
        matches!(self, Family::Oscillator | Family::Anharmonic)
    }
}

/// Quantum numbers: lower case for the Coulomb side, upper case for the oscillator side.
#[derive(Args, Debug, Clone)]
pub struct QuantumNumbers {
    #[arg(long = "n")]
    pub n: Option<IntRange>,
    #[arg(long = "l")]
    pub l: Option<IntRange>,
    #[arg(long = "N")]
    pub big_n: Option<IntRange>,
    #[arg(long = "L")]
    pub big_l: Option<IntRange>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub dim: u32,
    #[command(flatten)]
    pub numbers: QuantumNumbers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Args, Debug)]
pub struct WavefunctionArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 3)]
    pub dim: u32,
    #[command(flatten)]
    pub numbers: QuantumNumbers,
    /// Coordinate interval `lo..hi`.
    #[arg(long)]
    pub grid: Interval,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "linear")]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairFamily {
    Coulomb,
    Oscillator,
}

#[derive(Args, Debug)]
pub struct SusyPairArgs {
    #[arg(long, value_enum)]
    pub family: PairFamily,
    #[arg(long)]
    pub dim: u32,
    /// Angular momentum (`l` or `L`).
    #[arg(long = "l", visible_alias = "L")]
    pub l: u32,
    /// Number of bosonic levels.
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    /// Emit `V+`, `V-` and their difference on this interval instead of spectra.
    #[arg(long)]
    pub potentials: Option<Interval>,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Broken,
}

#[derive(Args, Debug)]
pub struct MapArgs {
    /// Coulomb dimension.
    #[arg(long = "d")]
    pub d: u32,
    #[arg(long = "n")]
    pub n: u32,
    #[arg(long = "l")]
    pub l: u32,
    /// Value, list, or `a..b` range of the mapping parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: RealSpec,
    /// Step ranges of `--lambda` by one half.
    #[arg(long)]
    pub half_steps: bool,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    /// Quantum defect(s) for broken mode.
    #[arg(long = "delta", default_value = "0")]
    pub delta: RealSpec,
    #[arg(long = "i", default_value_t = 0)]
    pub i: u32,
    /// Anharmonicity value(s) for broken mode.
    #[arg(long = "Delta", default_value = "0")]
    pub big_delta: RealSpec,
    #[arg(long = "I", default_value_t = 0, allow_hyphen_values = true)]
    pub big_i: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrapAction {
    Frequencies,
    OperatingPoint,
    Levels,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpeciesArg {
    Electron,
    Proton,
    Custom,
}

#[derive(Args, Debug)]
pub struct TrapArgs {
    #[arg(value_enum)]
    pub action: TrapAction,
    /// Magnetic field, tesla.
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Electrode voltage, volt.
    #[arg(long = "V", allow_hyphen_values = true)]
    pub v: Option<f64>,
    /// Trap size, meter.
    #[arg(long = "d-trap")]
    pub d_trap: Option<f64>,
    #[arg(long, value_enum)]
    pub species: Option<SpeciesArg>,
    /// Charge in coulomb (custom species).
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Option<f64>,
    /// Mass in kg (custom species).
    #[arg(long)]
    pub mass: Option<f64>,
    /// Geonium levels: principal range.
    #[arg(long = "N", default_value = "0..6")]
    pub big_n: IntRange,
    /// Geonium levels: angular range (all parity-matching `L <= N` if absent).
    #[arg(long = "L")]
    pub big_l: Option<IntRange>,
    /// Anharmonicity for every level; otherwise taken from the configuration.
    #[arg(long = "Delta")]
    pub big_delta: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
