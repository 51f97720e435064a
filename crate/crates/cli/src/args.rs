use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qclass_core::KernelSpec;

#[derive(Debug, Parser)]
#[command(
    name = "qclass",
    version,
    about = "Classify two-qubit states by separability and Wigner positivity",
    propagate_version = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Random seed [env: QCLASS_SEED] [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// TOML configuration file
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Tolerance override, e.g. `boundary=1e-10` (repeatable)
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tolerances: Vec<String>,

    /// Worker threads [default: all cores]
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the result here instead of stdout
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a state read from a JSON file
    Classify(ClassifyArgs),
    /// Build a kernel from its moduli and check the master equations
    Kernel(KernelArgs),
    /// Vertices of the Wigner positivity polytope as CSV
    Polytope(PolytopeArgs),
    /// Minimize the Wigner function of a state over a unitary orbit
    Minimize(MinimizeArgs),
    /// Monte Carlo fractions over a random-state ensemble
    Sample(SampleArgs),
    /// Estimate the largest ball around I/4 with a given property
    Radius(RadiusArgs),
    /// Emit figure data as CSV
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CPlus {
    Polytope,
    LuOrbit,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// State file: X-state entries or {"matrix": [[[re, im], ...], ...]}
    pub state: PathBuf,

    /// Kernel as `pair:<d14>,<d23>` or `quatrit:<pi1>,<pi2>`
    #[arg(long, default_value = "pair:0,0", allow_hyphen_values = true)]
    pub kernel: KernelSpec,

    /// Also minimize over the local-unitary orbit
    #[arg(long)]
    pub orbit_check: bool,

    /// Predicate used for Wigner positivity in `doubly_classical`
    #[arg(long, value_enum, default_value_t = CPlus::Polytope)]
    pub c_plus: CPlus,

    /// Orbit restarts [default: 20]
    #[arg(long)]
    pub restarts: Option<usize>,

    /// Orbit iteration budget per restart [default: 20000]
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Pair,
    Quatrit,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    /// Kernel family
    #[arg(value_enum)]
    pub family: Family,
    /// `|Δ14|` for pair kernels, `π1` for quatrit kernels
    #[arg(allow_negative_numbers = true)]
    pub a: f64,
    /// `|Δ23|` for pair kernels, `π2` for quatrit kernels
    #[arg(allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Args)]
pub struct PolytopeArgs {
    /// Kernel as `pair:<d14>,<d23>` or `quatrit:<pi1>,<pi2>`
    #[arg(
        long,
        default_value = "pair:0,0",
        allow_hyphen_values = true,
        conflicts_with = "spectrum"
    )]
    pub kernel: KernelSpec,

    /// Raw kernel spectrum `p1,p2,p3,p4` (not validated)
    #[arg(
        long,
        value_delimiter = ',',
        value_name = "P1,P2,P3,P4",
        allow_negative_numbers = true
    )]
    pub spectrum: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Lu,
    Full,
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    /// State file, same formats as `classify`
    pub state: PathBuf,

    /// Kernel as `pair:<d14>,<d23>` or `quatrit:<pi1>,<pi2>`
    #[arg(long, default_value = "pair:0,0", allow_hyphen_values = true)]
    pub kernel: KernelSpec,

    /// Orbit to minimize over; `lu` needs a pair kernel
    #[arg(long, value_enum, default_value_t = GroupArg::Full)]
    pub group: GroupArg,

    /// Restarts [default: 20]
    #[arg(long)]
    pub restarts: Option<usize>,

    /// Iteration budget per restart [default: 20000]
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    Hs,
    Xstate,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Number of samples [default: 10000]
    #[arg(long)]
    pub n: Option<u64>,

    /// Random-state ensemble
    #[arg(long, value_enum, default_value_t = EnsembleArg::Hs)]
    pub ensemble: EnsembleArg,

    /// Kernel as `pair:<d14>,<d23>` or `quatrit:<pi1>,<pi2>`
    #[arg(long, default_value = "pair:0,0", allow_hyphen_values = true)]
    pub kernel: KernelSpec,

    /// Also minimize over the local-unitary orbit for every sample
    #[arg(long)]
    pub orbit_check: bool,

    /// Predicate used for Wigner positivity in `doubly_classical`
    #[arg(long, value_enum, default_value_t = CPlus::Polytope)]
    pub c_plus: CPlus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    Separability,
    AbsoluteClassicality,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    /// Property that must hold on the whole ball
    #[arg(long, value_enum, default_value_t = PropertyArg::Separability)]
    pub property: PropertyArg,

    /// Random directions
    #[arg(long, default_value_t = 200)]
    pub directions: usize,

    /// Bisection tolerance on the radius along each direction
    #[arg(long, default_value_t = 1e-6)]
    pub bisection_tol: f64,

    /// Kernel scan grid per axis [default: 64]
    #[arg(long)]
    pub resolution: Option<usize>,

    /// Kernel family scanned for absolute classicality
    #[arg(long, value_enum, default_value_t = Family::Quatrit)]
    pub family: Family,

    /// Perturbation steps refining the worst direction
    #[arg(long, default_value_t = 400)]
    pub refine_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    #[value(name = "fig1_right")]
    Fig1Right,
    #[value(name = "fig2_left")]
    Fig2Left,
    #[value(name = "fig2_right")]
    Fig2Right,
    #[value(name = "moduli_scan")]
    ModuliScan,
    /// Every figure; `--output` names a directory
    All,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// Figure to emit
    #[arg(value_enum)]
    pub which: FigureArg,

    /// Grid points per axis [default: 64]
    #[arg(long)]
    pub resolution: Option<usize>,

    /// Kernel for `fig2_right` [default: a rounded reference spectrum]
    #[arg(long, allow_hyphen_values = true)]
    pub kernel: Option<KernelSpec>,
}
