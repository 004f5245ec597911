use clap::{Args, Parser, Subcommand, ValueEnum};

use rumin_core::KernelConvention;

pub const DEFAULT_PRECISION_BITS: usize = 128;

#[derive(Debug, Parser)]
#[command(name = "rumin", version, about = "Spectra, zeta values and contact torsion of CR spheres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues and multiplicities of the Rumin Laplacian in one degree
    Spectrum(SpectrumArgs),
    /// Evaluate the torsion function kappa(s)
    Kappa(KappaArgs),
    /// Closed-form torsion, the Ray-Singer comparison and route residuals
    Torsion(TorsionArgs),
    /// Run every identity suite and exit nonzero on any failure
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closed,
    Direct,
    Reduced,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Closed => "closed",
            Mode::Direct => "direct",
            Mode::Reduced => "reduced",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Included,
    Excluded,
}

impl From<Convention> for KernelConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Included => KernelConvention::Include,
            Convention::Excluded => KernelConvention::Exclude,
        }
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Sphere {
    /// Sphere index: the sphere is S^(2n+1)
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
    pub n: u32,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Precision {
    /// Working precision in bits
    #[arg(
        long,
        env = "RUMIN_PRECISION_BITS",
        default_value_t = DEFAULT_PRECISION_BITS,
        value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(32..=8192)
    )]
    pub prec: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub sphere: Sphere,
    /// Form degree, 0 ..= 2n+1
    #[arg(long)]
    pub degree: u32,
    /// Truncation level for the free label parameters
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4096))]
    pub max: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct KappaArgs {
    #[command(flatten)]
    pub sphere: Sphere,
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    #[arg(long, value_enum, default_value_t = Mode::Closed)]
    pub mode: Mode,
    /// Truncation level; direct mode defaults to 100, reduced mode without it
    /// uses the analytic continuation
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4096))]
    pub max: Option<u32>,
    #[arg(long, value_enum, default_value_t = Convention::Included)]
    pub kernel: Convention,
    #[command(flatten)]
    pub precision: Precision,
}

#[derive(Debug, Clone, Args)]
pub struct TorsionArgs {
    #[command(flatten)]
    pub sphere: Sphere,
    /// Truncation level of the direct and reduced routes at the reference point
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..=4096))]
    pub max: u32,
    /// Reference point for the route residuals; defaults to n/2 + 2
    #[arg(long = "reference-s", allow_negative_numbers = true)]
    pub reference_s: Option<f64>,
    #[arg(long, value_enum, default_value_t = Convention::Included)]
    pub kernel: Convention,
    #[command(flatten)]
    pub precision: Precision,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub sphere: Sphere,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=200))]
    pub max: u32,
    #[command(flatten)]
    pub precision: Precision,
}
