use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "simplex-interp",
    version,
    about = "Interpolation projector norms and moment-curve absorption coefficients on [-1, 1]"
)]
pub struct Cli {
    /// Working precision of every computation, in bits.
    #[arg(
        long,
        global = true,
        env = "SIMPLEX_INTERP_PRECISION_BITS",
        default_value_t = 256,
        value_parser = clap::value_parser!(u32).range(16..=65536)
    )]
    pub precision_bits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Significant digits of printed numbers.
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..=10000))]
    pub digits: u32,

    /// No progress messages on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,

    /// Record wall-clock time in the output (which then differs run to run).
    #[arg(long, global = true)]
    pub timing: bool,

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
    /// Norm, absorption coefficient, 1-point certificate and bounds for one
    /// node set.
    Analyze(AnalyzeArgs),
    /// Search for node sets minimizing the norm or the absorption coefficient.
    Minimize(MinimizeArgs),
    /// Reproduce one of the result tables.
    Tables(TablesArgs),
    /// Moment curve, barycentric coordinates and Lebesgue function on a grid.
    Curve(CurveArgs),
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct NodeSource {
    /// Comma-separated nodes, e.g. "-1,0,1".
    #[arg(long, allow_hyphen_values = true)]
    pub nodes: Option<String>,
    /// Equispaced nodes.
    #[arg(long)]
    pub regular: bool,
    /// Chebyshev nodes (zeros of T_{k+1}).
    #[arg(long)]
    pub chebyshev: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Polynomial degree.
    #[arg(short = 'k', long = "degree")]
    pub k: usize,
    #[command(flatten)]
    pub source: NodeSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Norm,
    Xi,
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    #[arg(short = 'k', long = "degree")]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Norm)]
    pub objective: ObjectiveArg,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub starts: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_iters: usize,
    /// Drop the symmetry constraint.
    #[arg(long)]
    pub asymmetric: bool,
    /// Let the outer nodes move away from ±1.
    #[arg(long)]
    pub free_endpoints: bool,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// 1: minimal norms, 2: minimal absorption coefficients, 3: equispaced
    /// nodes, 4: Chebyshev nodes.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub table: u8,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub kmax: Option<u64>,
    /// Starts per row for tables 1 and 2.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub starts: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(short = 'k', long = "degree")]
    pub k: usize,
    #[command(flatten)]
    pub source: NodeSource,
    /// Number of equispaced sample points, ends included.
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u64).range(2..))]
    pub samples: u64,
}
