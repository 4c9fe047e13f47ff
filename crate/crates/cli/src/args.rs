use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "wilson", version, about = "Lattice index of the massive Wilson-Dirac operator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice index I = (n+ - n-)/2 of a twisted operator
    Index(IndexArgs),
    /// Minimum of the symbol modulus over the Brillouin torus
    Gap(GapArgs),
    /// Degree of the normalized symbol map
    Degree(DegreeArgs),
    /// Invariant of an almost-commuting unitary tuple
    Acm(AcmArgs),
    /// Index over a grid of fluxes, lattice sizes and masses (CSV)
    Sweep(SweepArgs),
    /// Check the lower bound on the squared operator
    VerifyBound(BoundArgs),
    /// Run the acceptance criteria at reduced sizes
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Cutoff,
    Constant,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Auto,
    Dense,
    Band,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Dimension (even)
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Lattice points per direction
    #[arg(long = "N", default_value_t = 16)]
    pub n: usize,
    /// Flux entry `j,l=k` (1-based, j < l); repeatable
    #[arg(long = "flux", value_name = "J,L=K")]
    pub flux: Vec<String>,
    /// Read links from a WGF1 file instead (overrides --d, --N, --flux)
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Mass; mu = m (cutoff) or mu = m/N (constant)
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub m: f64,
    #[arg(long, value_enum, default_value_t = Mode::Cutoff)]
    pub mode: Mode,
    /// Zero threshold for eigenvalues (default 1e-8 ||H||_inf)
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Also write the result as a one-row CSV
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the assembled matrix in Matrix Market format
    #[arg(long)]
    pub export_mm: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub m: f64,
    /// Momentum grid points per direction
    #[arg(long, default_value_t = 512)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub m: f64,
    /// Newton seeds per direction (checked again at twice this)
    #[arg(long)]
    pub resolution: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Builtin {
    ClockShift,
}

#[derive(Debug, Args)]
pub struct AcmArgs {
    /// WUT1 file holding the tuple
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Matrix size for --builtin
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub m: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Lattice sizes, comma separated
    #[arg(long = "N", value_delimiter = ',', default_value = "16")]
    pub n: Vec<usize>,
    /// Masses: comma list `0.5,1` or range `start:stop:step`
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub m: String,
    /// Fixed flux entry `j,l=k`; repeatable
    #[arg(long = "flux", value_name = "J,L=K")]
    pub flux: Vec<String>,
    /// Flux entry swept over an inclusive range, `j,l=a:b`
    #[arg(long, value_name = "J,L=A:B")]
    pub vary: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Cutoff)]
    pub mode: Mode,
    /// Output file (default stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default WILSON_THREADS, 0 = all cores)
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub m: f64,
    /// Scale in [m, N] (default N)
    #[arg(long)]
    pub kappa: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Multiply every tolerance by this factor (< 1 tightens)
    #[arg(long, default_value_t = 1.0)]
    pub tolerance_scale: f64,
    /// Write per-criterion results as CSV
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Run at full acceptance sizes
    #[arg(long)]
    pub full: bool,
    /// Only run these criteria (e.g. A1,A9)
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Negative control: corrupt one Clifford generator
    #[arg(long, hide = true)]
    pub mutate_clifford: bool,
}
