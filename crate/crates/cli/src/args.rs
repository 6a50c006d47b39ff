use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "stieltjes", version, about = "Generalized Stieltjes and Cesàro operators: transforms, norms, spectra and verification")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write to this file (atomically) instead of stdout.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// TOML file with quadrature settings and the verification tolerance scale.
    #[arg(long, global = true, env = "STIELTJES_CONFIG", value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Absolute quadrature tolerance; overrides the config file.
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    /// Relative quadrature tolerance; overrides the config file.
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,

    /// Integrand evaluation budget per integral; overrides the config file.
    #[arg(long, global = true)]
    pub max_evals: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply an operator to a catalog function at a list of points.
    Transform(TransformArgs),
    /// Sample a spectral curve and report its geometric predicates.
    Spectrum(SpectrumArgs),
    /// Operator and kernel norms in closed form.
    Norm(NormArgs),
    /// Evaluate the φ and ψ kernels and the derivatives of φ.
    Kernel(KernelArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Write every curve of the spectral atlas to a directory.
    Atlas(AtlasArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformOp {
    /// S_{β,μ} by direct quadrature
    Stieltjes,
    /// S_{β,μ} through the dilation group
    Subordinated,
    /// C_γ
    Cesaro,
    /// Weyl fractional integral of order α
    WeylIntegral,
    /// Weyl fractional derivative of order α
    WeylDerivative,
    /// p.v. ∫_0^∞ f(s)/(t-s) ds
    Pv,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long, value_enum)]
    pub op: TransformOp,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Lebesgue exponent of the underlying L^p space.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Catalog function, e.g. exp:2, recip1p:1, h2, gauss, bump:0.5,1e5, plateau.
    #[arg(long = "fn", value_name = "ID")]
    pub function: String,
    /// Evaluation points, comma separated or repeated.
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub points: Vec<f64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("family").args(["beta", "gamma", "atlas"]).required(true)))]
pub struct SpectrumArgs {
    /// σ(S_{β,μ}) on L^p, with γ = β - 1/p.
    #[arg(long, allow_negative_numbers = true, requires = "mu")]
    pub beta: Option<f64>,
    /// The curve Υ_{γ,μ}, or σ(C_γ) with --cesaro.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Imaginary part of μ for Υ_{γ,μ}.
    #[arg(long, allow_negative_numbers = true, requires = "gamma", conflicts_with_all = ["beta", "cesaro"])]
    pub mu_im: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Sample σ(C_γ) instead of Υ_{γ,μ}.
    #[arg(long, requires = "gamma", conflicts_with = "mu")]
    pub cesaro: bool,
    /// Sweep the atlas parameter sets, one file per curve.
    #[arg(long, requires = "out_dir", conflicts_with_all = ["mu", "p", "cesaro"])]
    pub atlas: bool,
    /// Directory for --atlas output.
    #[arg(long, requires = "atlas", value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Curves are sampled on [-ξ_max, ξ_max].
    #[arg(long, default_value_t = stieltjes_core::spectra::DEFAULT_XI_MAX)]
    pub xi_max: f64,
    #[arg(long, default_value_t = stieltjes_core::spectra::DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormOp {
    /// ‖S_{β,μ}‖ on L^p
    Stieltjes,
    /// ‖C_γ‖ on L^p
    Cesaro,
    /// ‖φ_{β,μ}‖_p
    Phi,
    /// ‖ψ_{γ,ν}‖_p
    Psi,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long, value_enum)]
    pub op: NormOp,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// Lebesgue exponent; `inf` selects the sup norm for kernels.
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    /// φ_{β,μ}(t) = e^{βt}(1+e^t)^{-μ}
    Phi,
    /// ψ_{γ,ν}(t) = γ(1-e^{-t})^{γ-1}e^{-νt} for t > 0
    Psi,
    /// n-th derivative of φ_{β,μ}
    PhiDerivative,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    pub kind: KernelKind,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// Derivative order for phi-derivative.
    #[arg(long)]
    pub order: Option<u32>,
    /// Evaluation points, comma separated or repeated.
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub points: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of special, kernels, fractional, operators, spectra, all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Multiplies every case tolerance; overrides the config file.
    #[arg(long)]
    pub tol_scale: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AtlasArgs {
    #[arg(long, value_name = "DIR")]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub grid: GridArgs,
}
