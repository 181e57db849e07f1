use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "orthobound",
    version,
    about = "Ortho-spectrum kernels, explicit volume and ortholength bounds, and their numerical checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain, env = "ORTHOBOUND_FORMAT")]
    pub format: Format,
    /// Absolute quadrature tolerance
    #[arg(long, global = true, env = "ORTHOBOUND_ABS_TOL")]
    pub abs_tol: Option<f64>,
    /// Relative quadrature tolerance
    #[arg(long, global = true, env = "ORTHOBOUND_REL_TOL")]
    pub rel_tol: Option<f64>,
    /// Quadrature evaluation budget
    #[arg(long, global = true, env = "ORTHOBOUND_MAX_EVALS")]
    pub max_evals: Option<usize>,
    /// Significant digits printed (default 17 for csv/json, 6 for plain)
    #[arg(long, global = true, env = "ORTHOBOUND_PRECISION", value_parser = clap::value_parser!(u32).range(1..=17))]
    pub precision: Option<u32>,
    /// Accepted for scripting; every computation is deterministic anyway
    #[arg(long, global = true)]
    pub seedless: bool,
    /// M_n near-one regime width: b <= 1 + delta uses double-double
    #[arg(long, global = true, env = "ORTHOBOUND_MN_DELTA")]
    pub mn_delta: Option<f64>,
    /// M_n large-b threshold
    #[arg(long, global = true, env = "ORTHOBOUND_MN_LARGE_B")]
    pub mn_large_b: Option<f64>,
    /// M_n threshold for the two-term expansion
    #[arg(long, global = true, env = "ORTHOBOUND_MN_FAR_B")]
    pub mn_far_b: Option<f64>,
    /// Root-finder iteration cap
    #[arg(long, global = true, env = "ORTHOBOUND_SOLVER_MAX_ITER")]
    pub solver_max_iter: Option<u32>,
    /// Root-finder bracket tolerance
    #[arg(long, global = true, env = "ORTHOBOUND_SOLVER_TOL")]
    pub solver_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single function
    Eval {
        #[command(subcommand)]
        function: EvalFunction,
    },
    /// One row per dimension for a constant or floor
    Table(TableArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Solve a balance equation
    Solve {
        #[command(subcommand)]
        problem: SolveProblem,
    },
    /// Theorem-level bounds
    Bound {
        #[command(subcommand)]
        bound: BoundKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum EvalFunction {
    /// Kernel F_n(l) by quadrature
    #[command(name = "Fn", alias = "fn")]
    Fn {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        l: f64,
    },
    /// Dimension-3 kernel in closed form
    #[command(name = "F3", alias = "f3")]
    F3 {
        #[arg(long, allow_negative_numbers = true)]
        l: f64,
    },
    /// M_n(b) through the regime dispatcher
    #[command(name = "Mn", alias = "mn")]
    Mn {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Also evaluate the double-integral oracle
        #[arg(long)]
        with_oracle: bool,
    },
    /// M_n(b) from its defining double integral
    #[command(name = "Mn-oracle", alias = "mn-oracle")]
    MnOracle {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
    },
    /// S_n(x) = ∫_0^x cosh^{n-1}
    #[command(name = "Sn", alias = "sn")]
    Sn {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Basmajian summand for ortholength l
    Basmajian {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        l: f64,
    },
    /// Envelope constant K_n and its floor
    #[command(name = "Kn", alias = "kn")]
    Kn {
        #[arg(long)]
        n: u32,
    },
    /// g_n
    #[command(name = "gn")]
    Gn {
        #[arg(long)]
        n: u32,
    },
    /// h_n
    #[command(name = "hn")]
    Hn {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableQuantity {
    #[value(name = "gn")]
    Gn,
    #[value(name = "hn")]
    Hn,
    #[value(name = "Kn", alias = "kn")]
    Kn,
    OddFloor,
    EvenFloor,
    Comparators,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub quantity: TableQuantity,
    /// Dimension range, `a..b` (inclusive) or a single value
    #[arg(long, default_value = "3..10")]
    pub n: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    LemmaMunif,
    LemmaFb,
    LemmaKn,
    MnOracle,
    F3Crosscheck,
    Limits,
    BetaHalving,
    Gamma,
    Monotonicity,
    Constants,
    Dim3Solve,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Override the suite's dimension range
    #[arg(long)]
    pub n: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum SolveProblem {
    /// Common value of F_3(x) = 4π S_3(x/2)
    Dim3Bound,
    /// Root of F_n(l) = A l / 2
    Collar {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        area: f64,
    },
    /// Root of K_n/(e^l - 1)^{n-2} = A l / 2
    L0 {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        area: f64,
    },
    /// Common value of F_n(x) = A S_n(x/2)
    VolumeBound {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        area: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundKind {
    /// Lower bound on e^L - 1 from the volume
    Ortholength {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        volume: f64,
    },
    /// Volume lower bound from the boundary volume
    VolumeFromBoundary {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        area: f64,
    },
    /// Volume lower bound from the systole
    Bt {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        systole: f64,
    },
    /// Volume >= 1 or e^L - 1 >= this value
    Dichotomy {
        #[arg(long)]
        n: u32,
    },
    /// Dimension 3: L > 1.25 or e^L - 1 >= π/V
    Dim3Short {
        #[arg(long, allow_negative_numbers = true)]
        volume: f64,
    },
}
