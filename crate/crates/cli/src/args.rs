use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use susyext::extensions::ExtensionType;
use susyext::potentials::Family;

#[derive(Debug, Parser)]
#[command(name = "susyext", version, about = "Rationally extended Rosen-Morse II and Eckart potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analytic and numeric bound-state energies side by side.
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Run a built-in verification suite.
    Verify(VerifyArgs),
    /// Sample a potential, wavefunctions or the superpotential.
    #[command(allow_negative_numbers = true)]
    Sample(SampleArgs),
    /// Validity and bound-state count over an (A, B) grid.
    #[command(allow_negative_numbers = true)]
    Scan(ScanArgs),
    /// Zero counts of a Jacobi polynomial on (-1, 1) and (1, inf).
    #[command(allow_negative_numbers = true)]
    Zeros(ZerosArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Rm2,
    Eckart,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Rm2 => Family::RosenMorseII,
            FamilyArg::Eckart => Family::Eckart,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TypeArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
}

impl From<TypeArg> for ExtensionType {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::I => ExtensionType::I,
            TypeArg::II => ExtensionType::II,
            TypeArg::III => ExtensionType::III,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    ZeroRules,
    ClosedForm,
    Operators,
    Residuals,
    Isospectral,
    ShapeInvariance,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleKind {
    Potential,
    Wavefunction,
    Superpotential,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(value_enum)]
    pub family: FamilyArg,
    /// Use the rationally extended potential instead of the conventional one.
    #[arg(long)]
    pub ext: bool,
    #[arg(long = "type", value_enum)]
    pub ext_type: Option<TypeArg>,
    #[arg(short = 'A')]
    pub a: f64,
    #[arg(short = 'B')]
    pub b: f64,
    #[arg(short = 'm')]
    pub m: Option<usize>,
}

#[derive(Debug, Clone, Args, Default)]
pub struct GridArgs {
    /// Interior grid points.
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
}

#[derive(Debug, Clone, Args, Default)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write data here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Absolute tolerance on |numeric - analytic|.
    #[arg(long, default_value_t = 5e-3)]
    pub tolerance: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Emit the full report as JSON.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(value_enum)]
    pub what: SampleKind,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Sample at these points instead of a grid.
    #[arg(long = "x")]
    pub x: Vec<f64>,
    /// Restrict wavefunction output to one level.
    #[arg(long)]
    pub nu: Option<i64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(value_enum)]
    pub family: FamilyArg,
    #[arg(long = "type", value_enum)]
    pub ext_type: TypeArg,
    #[arg(short = 'm')]
    pub m: usize,
    /// LO:HI, inclusive.
    #[arg(long, allow_hyphen_values = true)]
    pub a_range: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b_range: String,
    /// Intervals per axis; the grid has (steps + 1)^2 points.
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ZerosArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    /// Sample points for the brute-force count.
    #[arg(long, default_value_t = 20_000)]
    pub resolution: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
