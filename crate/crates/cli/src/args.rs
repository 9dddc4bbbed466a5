use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "covent", version, about = "Covariance-based correlation and entanglement tools", long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorsArg {
    EqualWeight,
    Pair,
    Sigma3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Cov,
    Altcov,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// |cov| and |C| of the four comparison states under sigma3 (x) sigma3.
    Table41,
    /// The state with vanishing cov but nonzero C.
    Counterexample,
    /// Parameter sweeps.
    Scan {
        #[command(subcommand)]
        kind: ScanCommand,
    },
    /// Maximize a covariance over local unitaries.
    Optimize(OptimizeArgs),
    /// Quantum channels.
    Channel {
        #[command(subcommand)]
        action: ChannelCommand,
    },
    /// Majorana polynomials and constellations.
    Majorana {
        #[command(subcommand)]
        action: MajoranaCommand,
    },
    /// Quadratic local-unitary invariants of a state.
    Invariants(StateArgs),
    /// Number of independent invariants per order.
    Singlets(SingletArgs),
}

#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    /// Density matrix file (JSON).
    #[arg(long, conflicts_with = "named")]
    pub rho: Option<PathBuf>,
    /// Built-in state label, e.g. rho1, phi+, counterexample.
    #[arg(long)]
    pub named: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum ScanCommand {
    /// Bell state with both operators rotated over [0, pi]^2.
    BellRotation {
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, value_enum, default_value_t = OperatorsArg::EqualWeight)]
        operators: OperatorsArg,
    },
    /// cos(x)|uu> + sin(x)|dd> over [0, pi/2].
    PureFamily {
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, value_enum, default_value_t = OperatorsArg::EqualWeight)]
        operators: OperatorsArg,
        /// Rotation of the first operator about y.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        y: f64,
    },
    /// x P1 + (1 - x) P2 for two Bell projectors, x in [0, 1].
    BellMixture {
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, value_enum, default_value_t = OperatorsArg::EqualWeight)]
        operators: OperatorsArg,
        #[arg(long, default_value = "phi+")]
        b1: String,
        #[arg(long, default_value = "psi+")]
        b2: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Search over pure states of a d1 x d2 system instead of a given state.
    #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
    pub dims: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = OperatorsArg::EqualWeight)]
    pub operators: OperatorsArg,
    #[arg(long, value_enum, default_value_t = MeasureArg::Cov)]
    pub measure: MeasureArg,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 5000)]
    pub max_iters: usize,
}

#[derive(Subcommand, Debug)]
pub enum ChannelCommand {
    /// Apply a channel to a two-qubit state and print the output state.
    Apply {
        #[command(flatten)]
        state: StateArgs,
        /// Channel name; only `lgm` is built in.
        #[arg(long, default_value = "lgm")]
        channel: String,
        /// Divide the output by its trace.
        #[arg(long)]
        renormalize: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SpinStateArgs {
    /// Spin, e.g. 1, 3/2 or 2.5.
    #[arg(long)]
    pub j: String,
    /// Comma-separated real parts, ordered m = -j..j (or by power of z).
    #[arg(long, allow_hyphen_values = true)]
    pub re: String,
    /// Comma-separated imaginary parts; zero if omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub im: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum MajoranaCommand {
    /// Polynomial coefficients of a spin state (normalized first).
    State2poly(SpinStateArgs),
    /// Constellation of a polynomial given by its coefficients.
    Roots(SpinStateArgs),
    /// Spin dispersion of a state (normalized first).
    Dispersion(SpinStateArgs),
    /// Maximal-dispersion constellations for j = 1, 3/2, 2, 5/2.
    Catalog {
        #[arg(long)]
        j: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SingletArgs {
    /// Orders 0..terms.
    #[arg(long, default_value_t = 21)]
    pub terms: usize,
    #[arg(long, num_args = 2, value_names = ["D1", "D2"], default_values_t = [2, 2])]
    pub dims: Vec<usize>,
}
