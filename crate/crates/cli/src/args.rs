use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "instanton-lab",
    version,
    about = "Mode-stability checks for the Riemannian Kerr and Taub-bolt instantons",
    after_help = "Exit status: 0 verified, 1 failed or inconclusive, 2 usage or configuration error.\n\
                  INSTANTON_LAB_THREADS caps the worker threads of certify and modescan."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Newman-Penrose commutators, vacuum equations and Bianchi identities at random points.
    NpCheck(NpCheckArgs),
    /// Spin coefficients and Weyl scalars from the metric against the closed forms.
    Weyl(WeylArgs),
    /// Whether (m, omega) descends to the identified manifold.
    Lattice(LatticeArgs),
    /// Separation constants of the angular equation.
    Angular(AngularArgs),
    /// Singular points, regular and decaying radial solutions, their Wronskian.
    Radial(RadialArgs),
    /// Negativity of the radial potential for one mode.
    Certify(CertifyArgs),
    /// Scan lattice modes for solutions regular at the bolt and decaying at infinity.
    Modescan(ModescanArgs),
    /// Regularity of the metric in the charts at the axis, bolt and chart overlap.
    ChartCheck(ChartCheckArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackgroundChoice {
    Kerr,
    Taubbolt,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationChoice {
    Plain,
    Tilded,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeChoice {
    Axis,
    Bolt,
    Transition,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Instanton: Kerr with --M and --a, Taub-bolt with --N.
    #[arg(long, value_enum, default_value = "kerr")]
    pub background: BackgroundChoice,
    /// Kerr mass.
    #[arg(long = "M", id = "M", default_value_t = 1.0)]
    pub mass: f64,
    /// Kerr rotation parameter.
    #[arg(long = "a", id = "a", default_value_t = 0.0, allow_hyphen_values = true)]
    pub spin: f64,
    /// Taub-bolt NUT parameter.
    #[arg(long = "N", id = "N", default_value_t = 1.0)]
    pub nut: f64,
    /// Report format; csv only for modescan.
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Seed for random sample points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fill `runtime_ms`; reports are then no longer reproducible byte for byte.
    #[arg(long)]
    pub record_runtime: bool,
    /// Use the Kerr frequency set omega in Omega + kappa Z for every m.
    #[arg(long)]
    pub paper_lattice: bool,
}

#[derive(Args, Debug, Clone)]
#[group(id = "frequency", required = true, multiple = false)]
pub struct Frequency {
    /// Frequency.
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Lattice frequency index.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
}

#[derive(Args, Debug, Clone)]
#[group(id = "separation", multiple = false)]
pub struct Separation {
    /// Separation constant; must be an eigenvalue of the angular equation.
    #[arg(long = "Lambda", id = "Lambda", allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Index of the separation constant, 0 for the lowest [default: 0].
    #[arg(long)]
    pub lambda_index: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct NpCheckArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Bound on the coefficient that must vanish in the decoupling argument.
    #[arg(long, default_value_t = 1e-9)]
    pub a1_tolerance: f64,
}

#[derive(Args, Debug, Clone)]
pub struct WeylArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    /// Bound on the mismatch of spin coefficients and Psi2 against the closed forms.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Bound on the Weyl scalars other than Psi2.
    #[arg(long, default_value_t = 1e-9)]
    pub vanishing_tolerance: f64,
}

#[derive(Args, Debug, Clone)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Azimuthal number.
    #[arg(long, allow_hyphen_values = true)]
    pub m: f64,
    #[command(flatten)]
    pub frequency: Frequency,
}

#[derive(Args, Debug, Clone)]
pub struct AngularArgs {
    #[command(flatten)]
    pub common: Common,
    /// Azimuthal number.
    #[arg(long, allow_hyphen_values = true)]
    pub m: f64,
    #[command(flatten)]
    pub frequency: Frequency,
    #[arg(long, value_enum, default_value = "plain")]
    pub equation: EquationChoice,
    #[arg(long, default_value_t = 4)]
    pub count: usize,
    /// Jacobi basis size.
    #[arg(long, default_value_t = 48)]
    pub order: usize,
    /// Cells of the finite-difference cross-check; 0 skips it.
    #[arg(long, default_value_t = 0)]
    pub fd_cells: usize,
    /// Bound on |spectral - finite difference| when the cross-check runs.
    #[arg(long, default_value_t = 1e-6)]
    pub fd_tolerance: f64,
}

#[derive(Args, Debug, Clone)]
pub struct RadialArgs {
    #[command(flatten)]
    pub common: Common,
    /// Azimuthal number.
    #[arg(long, allow_hyphen_values = true)]
    pub m: f64,
    #[command(flatten)]
    pub frequency: Frequency,
    #[command(flatten)]
    pub separation: Separation,
    #[arg(long, value_enum, default_value = "plain")]
    pub equation: EquationChoice,
    #[command(flatten)]
    pub radial: RadialOptions,
}

#[derive(Args, Debug, Clone)]
pub struct RadialOptions {
    #[arg(long, default_value_t = 1e-11)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-13)]
    pub abs_tol: f64,
    /// Stored samples per solution.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Offset from the inner singular point where the Frobenius seed is placed.
    #[arg(long, default_value_t = 0.01)]
    pub seed_offset: f64,
    #[arg(long, default_value_t = 20)]
    pub frobenius_order: usize,
    /// Lower bound on the normalized connection Wronskian.
    #[arg(long, default_value_t = 1e-3)]
    pub threshold: f64,
    /// Matching radius in units of the inner radius.
    #[arg(long, default_value_t = 3.0)]
    pub match_factor: f64,
    /// Outer radius of the integration [default: 30 scale/|omega| or 50 r_inner, 40 r_inner at omega = 0].
    #[arg(long)]
    pub outer_radius: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Azimuthal number.
    #[arg(long, allow_hyphen_values = true)]
    pub m: f64,
    #[command(flatten)]
    pub frequency: Frequency,
    #[command(flatten)]
    pub separation: Separation,
    #[arg(long, default_value_t = 10_000)]
    pub radial_cells: usize,
    #[arg(long, default_value_t = 1_000)]
    pub angular_cells: usize,
    #[arg(long, default_value_t = 1_000)]
    pub identity_samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub identity_tolerance: f64,
}

#[derive(Args, Debug, Clone)]
pub struct ModescanArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated m values [default: -2..2 for Kerr, 0,±1/2,±1 for Taub-bolt].
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub m_values: Option<Vec<f64>>,
    /// Comma-separated frequency indices [default: ±1..3 for Kerr, -2..2 for Taub-bolt].
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub n_values: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', value_enum, default_value = "plain,tilded")]
    pub equations: Vec<EquationChoice>,
    #[arg(long, default_value_t = 3)]
    pub lambda_count: usize,
    /// Threshold refinement factor for rows below the threshold.
    #[arg(long, default_value_t = 10.0)]
    pub refine_factor: f64,
    /// Outer radius at omega = 0, in units of the inner radius.
    #[arg(long, default_value_t = 40.0)]
    pub static_outer_factor: f64,
    #[command(flatten)]
    pub radial: RadialOptions,
}

#[derive(Args, Debug, Clone)]
pub struct ChartCheckArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "all")]
    pub probe: ProbeChoice,
}
