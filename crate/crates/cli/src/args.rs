use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Limit shapes of projections of unitary-group representations.
#[derive(Debug, Parser)]
#[command(name = "qmk", version, about)]
pub struct Cli {
    /// Root seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Grid intervals for constructed or recovered objects.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Limit moments of a profile by every available route.
    Moments(MomentsArgs),
    /// Exact finite-N moments of a law on signatures.
    Finite(FiniteArgs),
    /// Empirical law-of-large-numbers run over several sizes.
    Converge(ConvergeArgs),
    /// Apply one of the correspondences to a gridded density or diagram.
    Transform(TransformArgs),
    /// Emit closed-form reference objects.
    Gallery(GalleryArgs),
    /// Quick internal consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    /// Profile JSON file: {"c": ["1", "1/2"], "kind": "polynomial"}.
    #[arg(long, conflicts_with = "coeffs")]
    pub profile: Option<PathBuf>,
    /// Comma-separated derivatives H^(k)(1), k >= 1, as rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Treat the coefficients as known only up to the given length.
    #[arg(long)]
    pub truncated: bool,
    /// Use floating point instead of exact rationals.
    #[arg(long)]
    pub float: bool,
    #[arg(long, default_value_t = 6)]
    pub kmax: usize,
}

#[derive(Debug, Args)]
pub struct FiniteArgs {
    /// Point mass at one signature, e.g. "2,1,0".
    #[arg(long, allow_hyphen_values = true, group = "source")]
    pub lambda: Option<String>,
    /// Tensor product of signatures separated by ';', e.g. "1,0;1,0".
    #[arg(long, allow_hyphen_values = true, group = "source")]
    pub tensor: Option<String>,
    /// Law JSON file: {"entries": [{"lambda": [1, 0], "p": "1/2"}, ...]}.
    #[arg(long, group = "source")]
    pub law: Option<PathBuf>,
    /// Project the law this many levels down first.
    #[arg(long, default_value_t = 0)]
    pub project: usize,
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Trivial,
    Block,
    Tensor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Exact,
    Lift,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Block)]
    pub family: FamilyArg,
    /// Comma-separated sizes N.
    #[arg(long, default_value = "8,16,32,64")]
    pub sizes: String,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 3)]
    pub kmax: usize,
    #[arg(long, default_value_t = 20)]
    pub batches: usize,
    /// Width of the Monte-Carlo band in standard errors.
    #[arg(long, default_value_t = 3.0)]
    pub z: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Psi2w,
    W2psi,
    Mu2w,
    W2mu,
    Quantize,
    Dequantize,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long, value_enum)]
    pub direction: Direction,
    /// Input object JSON file, or '-' for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Number of eta levels combined by extrapolation (1 to 3).
    #[arg(long, default_value_t = 3)]
    pub eta_levels: usize,
    /// "standard" or a JSON file with [[re, im], ...].
    #[arg(long, default_value = "standard")]
    pub probes: String,
    /// Largest accepted |R_in - R_out| on the probes.
    #[arg(long, default_value_t = 1e-3)]
    pub probe_tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GalleryName {
    /// One-sided Plancherel density and diagram, parameter gamma.
    Plancherel,
    /// Semicircle law and the VKLS curve.
    Classical,
    Semicircle,
    Vkls,
    /// Uniform density on [0, 1] and |x - 1|.
    Trivial,
    /// Recentred Plancherel pair with gamma = 1/eps^2, rescaled by eps.
    Semiclassical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Part {
    Density,
    Diagram,
    Both,
}

#[derive(Debug, Args)]
pub struct GalleryArgs {
    #[arg(value_enum)]
    pub name: GalleryName,
    /// Comma-separated gamma values for the Plancherel pair.
    #[arg(long, default_value = "1")]
    pub gamma: String,
    /// Comma-separated eps values for the semiclassical pair.
    #[arg(long, default_value = "1,0.5,0.25")]
    pub eps: String,
    #[arg(long, value_enum, default_value_t = Part::Both)]
    pub part: Part,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Include the slow Monte-Carlo convergence check.
    #[arg(long)]
    pub full: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
