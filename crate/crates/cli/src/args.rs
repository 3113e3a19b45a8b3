use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zerosound::kinetic::Window;
use zerosound::{MassConvention, SolverConfig};

/// Zero-sound dispersion in quantum Fermi liquids.
///
/// All inputs are dimensionless: the Landau constant Q0 and the wavenumber
/// k·λ_d with λ_d = ħ/p_F. Physical units enter only through --params-file.
#[derive(Debug, Parser)]
#[command(name = "zerosound", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for a single mode and print it as JSON.
    Solve(SolveArgs),
    /// Tabulate the exact root over a k·λ_d grid.
    Scan(ScanArgs),
    /// Evolve the kinetic equation in time and extract the collective frequency.
    Simulate(SimulateArgs),
    /// Compare every route to S for one (Q0, k·λ_d).
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    /// Landau interaction constant.
    #[arg(long = "Q0", default_value_t = 0.0, allow_negative_numbers = true)]
    pub q0: f64,
    /// Dimensionless wavenumber k·λ_d.
    #[arg(long = "k-lambda", default_value_t = 0.0, allow_negative_numbers = true)]
    pub k_lambda: f64,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Residual tolerance for exact roots.
    #[arg(long, default_value_t = SolverConfig::default().tolerance)]
    pub tol: f64,
    /// Medium preset (keys m, m_star, p_F, n0, hbar); enables physical ω.
    #[arg(long)]
    pub params_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Write the JSON here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long = "Q0", default_value_t = 0.0, allow_negative_numbers = true)]
    pub q0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub k_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub k_max: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Space the grid logarithmically.
    #[arg(long)]
    pub log: bool,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct KineticArgs {
    /// Angular grid size.
    #[arg(long)]
    pub n_mu: Option<usize>,
    /// Time step in units of 1/(k·v_F); defaults to the stability bound 0.1/(1 + A).
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long, default_value_t = 16384)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = WindowArg::Hann)]
    pub window: WindowArg,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[command(flatten)]
    pub kinetic: KineticArgs,
    /// Amplitude of the isotropic initial perturbation.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub amplitude: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Time-series CSV destination.
    #[arg(long)]
    pub out: PathBuf,
    /// Write the JSON summary here instead of standard output.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[command(flatten)]
    pub kinetic: KineticArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = MassConventionArg::Effective)]
    pub mass_convention: MassConventionArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MassConventionArg {
    Bare,
    Effective,
}

impl From<MassConventionArg> for MassConvention {
    fn from(arg: MassConventionArg) -> Self {
        match arg {
            MassConventionArg::Bare => MassConvention::Bare,
            MassConventionArg::Effective => MassConvention::Effective,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WindowArg {
    None,
    Hann,
}

impl From<WindowArg> for Window {
    fn from(arg: WindowArg) -> Self {
        match arg {
            WindowArg::None => Window::None,
            WindowArg::Hann => Window::Hann,
        }
    }
}
