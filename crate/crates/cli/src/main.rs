//! `lipkit` command-line front end.

mod commands;
mod error;
mod network;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "lipkit", version, about = "Lipschitz bounds, singular-value derivatives and spectral analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Global Lipschitz bound of a network graph.
    Bound(BoundArgs),
    /// Jacobian or Hessian of a singular value.
    SvdDeriv(SvdDerivArgs),
    /// Lipschitz constant of an activation function.
    Activation(ActivationArgs),
    /// Spectral Lipschitz analysis of a sampled signal.
    Fourier(FourierArgs),
    /// Driving forces and Euler–Maruyama simulation of one layer.
    Dynamics(DynamicsArgs),
    /// Shapley values of a coalition game table.
    Shapley(ShapleyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoundMethod {
    Product,
    Dag,
    Articulation,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Spectral {
    Full,
    Power,
    Auto,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Network description (JSON).
    #[arg(long)]
    pub net: PathBuf,
    #[arg(long, value_enum, default_value = "dag")]
    pub method: BoundMethod,
    /// Comma-separated node ids for the product method (default: topological order).
    #[arg(long, value_delimiter = ',')]
    pub chain: Option<Vec<String>>,
    #[arg(long, value_enum, default_value = "auto")]
    pub spectral: Spectral,
    /// Power-iteration steps.
    #[arg(long, default_value_t = 500)]
    pub iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Per-node CSV output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SvdDerivArgs {
    /// Matrix CSV.
    #[arg(long)]
    pub matrix: PathBuf,
    /// 1-based singular index.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub order: u8,
    /// Compare against central finite differences.
    #[arg(long)]
    pub check_fd: bool,
    /// Finite-difference step (default 1e-6 for order 1, 1e-5 for order 2).
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ActivationArgs {
    /// Activation name, e.g. `gelu`, `leaky_relu(0.2)`, `softmax(3)`.
    #[arg(long)]
    pub name: String,
    /// Also run the numerical search.
    #[arg(long)]
    pub numeric: bool,
    /// Search interval for elementwise activations.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub domain: Option<Vec<f64>>,
    #[arg(long, default_value_t = 20_001)]
    pub grid: usize,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TaperArg {
    None,
    Parzen,
}

#[derive(Debug, Args)]
pub struct FourierArgs {
    /// Signal CSV with a `# dx=` (and `dy=`) header.
    #[arg(long)]
    pub signal: PathBuf,
    /// Report the spectral bound and the grid gradient supremum.
    #[arg(long)]
    pub bound: bool,
    #[arg(long, value_enum, default_value = "none")]
    pub taper: TaperArg,
    /// Frequency ball center, comma-separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub band_center: Option<Vec<f64>>,
    #[arg(long)]
    pub band_radius: Option<f64>,
    /// Number of radial rings for the energy spectral density.
    #[arg(long)]
    pub rings: Option<usize>,
    /// Noise signal for ring-wise SNR (requires --rings).
    #[arg(long)]
    pub noise: Option<PathBuf>,
    /// Ring CSV output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    /// Parameter matrix CSV.
    #[arg(long)]
    pub theta: PathBuf,
    /// Loss gradient CSV, same shape as theta (default zero).
    #[arg(long)]
    pub grad: Option<PathBuf>,
    /// Noise covariance CSV, mn × mn (default identity).
    #[arg(long)]
    pub cov: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-3)]
    pub eta: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[arg(long, default_value_t = 0)]
    pub steps: usize,
    #[arg(long, default_value_t = 1)]
    pub decimate: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Trajectory CSV output.
    #[arg(long)]
    pub traj_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ShapleyArgs {
    /// Game table CSV (`mask,value`).
    #[arg(long)]
    pub game: PathBuf,
    /// Expected player count.
    #[arg(long)]
    pub players: Option<usize>,
    /// Permutation samples; exact computation when absent.
    #[arg(long)]
    pub mc_perms: Option<usize>,
    /// Band weights for the importance score (default uniform).
    #[arg(long, value_delimiter = ',')]
    pub beta: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("LIPKIT_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::parse(format!("LIPKIT_THREADS={v:?} is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::parse(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Bound(a) => commands::bound(&a),
        Command::SvdDeriv(a) => commands::svd_deriv(&a),
        Command::Activation(a) => commands::activation(&a),
        Command::Fourier(a) => commands::fourier(&a),
        Command::Dynamics(a) => commands::dynamics(&a),
        Command::Shapley(a) => commands::shapley(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
