use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "unijac",
    version,
    about = "Weighted minimax polynomials on [0, 1], comb maps and least-deviation polynomials on the ball"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Convergence tolerance of the Remez and Newton solvers.
    #[arg(long, global = true, env = "UNIJAC_TOL", default_value_t = 1e-12)]
    pub tol: f64,

    #[arg(long, global = true, default_value_t = 100)]
    pub max_iter: usize,

    /// Seed for the randomized `verify` suite.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Accept comma-separated parameter lists and solve their Cartesian
    /// product in parallel. Results keep the input order.
    #[arg(long, global = true)]
    pub sweep: bool,

    /// Append every result as one JSON line to this file.
    #[arg(long, global = true, env = "UNIJAC_RESULTS_LOG")]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Uniform Jacobi polynomial by Remez exchange.
    Jacobi(WeightDegree),
    /// Comb-domain map parameters by Newton's method, or its geometry.
    Map(MapArgs),
    /// Least-deviation polynomial for a monomial on the ball.
    Ball(BallArgs),
    /// Limit constants, limit map and convergence studies.
    Asym(AsymArgs),
    /// Grid linear-programming minimax.
    Oracle(OracleArgs),
    /// Randomized cross-checks between the solvers.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WeightDegree {
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub alpha: Vec<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub beta: Vec<f64>,
    #[arg(long, short, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    #[command(flatten)]
    pub params: WeightDegree,

    /// Emit the domain skeleton and boundary correspondence with this many
    /// samples per side instead of the parameters.
    #[arg(long)]
    pub geometry: Option<usize>,

    /// Restart Newton from the Remez roots if the independent start fails.
    #[arg(long)]
    pub fallback: bool,

    /// Report the largest difference against the Remez solution.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Debug, Clone, Args)]
pub struct IndexArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub k1: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub l1: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub k2: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub l2: Vec<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct BallArgs {
    #[command(flatten)]
    pub index: IndexArgs,

    /// Run the triangle verifier; exits with status 3 if a check fails.
    #[arg(long)]
    pub verify: bool,

    /// Subdivisions per side of the triangle grid.
    #[arg(long, default_value_t = 2000)]
    pub grid: usize,
}

#[derive(Debug, Clone, Args)]
pub struct AsymArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub kappa1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub kappa2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda2: Option<f64>,

    /// Limit-map exponents, instead of a profile.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["kappa1", "lambda1", "kappa2", "lambda2"])]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "alpha")]
    pub beta: Option<f64>,

    /// Evaluate the limit map at `re,im`.
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        requires = "alpha"
    )]
    pub z: Option<Vec<f64>>,

    /// Total degrees for a convergence study of the profile.
    #[arg(long, value_delimiter = ',')]
    pub study: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(subcommand)]
    pub mode: OracleMode,
}

#[derive(Debug, Clone, Subcommand)]
pub enum OracleMode {
    /// The weighted problem on [0, 1].
    Line {
        #[command(flatten)]
        params: WeightDegree,
        /// Number of equispaced sample points.
        #[arg(long, default_value_t = 2000)]
        grid: usize,
    },
    /// The weighted problem on the triangle for a ball monomial.
    Triangle {
        #[command(flatten)]
        index: IndexArgs,
        /// Subdivisions per side.
        #[arg(long, default_value_t = 100)]
        grid: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Random cases per check.
    #[arg(long, default_value_t = 20)]
    pub cases: usize,
}
