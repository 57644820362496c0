use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Random k-SAT toolkit: samplers, exact enumeration, marginal predicates,
/// moment numerics and coefficient asymptotics.
///
/// Exit status: 0 on success, 1 when a computation or verification fails,
/// 2 on usage errors (bad flags, unreadable input, enumeration cap exceeded).
#[derive(Debug, Parser)]
#[command(name = "ksat", version)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// RNG seed; every sampled quantity is a pure function of it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format for reports and errors.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Instance size. Exactly one of `--m` and `--r` is required; a density is
/// converted with `m = floor(r·n + 1/2)`.
#[derive(Debug, Args, Clone)]
#[group(skip)]
pub struct Size {
    /// Clause width.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    /// Number of clauses.
    #[arg(long, required_unless_present = "r", conflicts_with = "r")]
    pub m: Option<usize>,
    /// Clause density m/n.
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a formula (DIMACS) or a degree sequence.
    Gen(GenArgs),
    /// Enumerate the satisfying assignments of a DIMACS formula.
    Census(CensusArgs),
    /// Per-variable degrees, marginal-map values and the majority vote.
    Marginals(MarginalsArgs),
    /// First- and second-moment exponents, solver residuals and gradients.
    Moments(MomentsArgs),
    /// Exact and asymptotic generating-function coefficients.
    Saddle(SaddleArgs),
    /// Closed-form threshold bounds.
    Bounds(BoundsArgs),
    /// Run a simulation campaign.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Clauses i.i.d. uniform over k-tuples of literals.
    Uniform,
    /// Conditional-Poisson degrees, then a uniform formula with those degrees.
    TwoStep,
    /// Two-step with clause-type counts drawn first.
    Typed,
    /// A uniform assignment and clauses it satisfies.
    Planted,
    /// Only the conditional-Poisson degree sequence.
    Degrees,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value_t = Model::Uniform)]
    pub model: Model,
    #[command(flatten)]
    pub size: Size,
    /// Also write JSON metadata (seed, model, parameters) to this file.
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// DIMACS input file.
    pub input: PathBuf,
    /// Refuse formulas with more variables than this.
    #[arg(long, default_value_t = ksat_census::DEFAULT_CAP)]
    pub cap: usize,
    /// Also compute the pair-distance spectrum.
    #[arg(long)]
    pub spectrum: bool,
}

#[derive(Debug, Args)]
pub struct MarginalsArgs {
    /// DIMACS input file.
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    /// Clause width.
    #[arg(long)]
    pub k: usize,
    /// Clause density (default: r_bp(k)).
    #[arg(long)]
    pub r: Option<f64>,
    /// Literal types: `balanced`, `bp`, or a list `t:pi:var_fraction,...`.
    #[arg(long, default_value = "balanced")]
    pub type_spec: String,
    /// Clause type for the pair system, comma separated (default: all 1/2).
    #[arg(long, value_delimiter = ',')]
    pub ell: Option<Vec<f64>>,
    /// Overlap vector, comma separated (default: ℓ²).
    #[arg(long, value_delimiter = ',')]
    pub omega: Option<Vec<f64>>,
    /// Finite-difference step for the gradient.
    #[arg(long, default_value_t = 1e-4)]
    pub grad_step: f64,
    /// Also compute the finite-difference Hessian at ℓ² with this step.
    #[arg(long)]
    pub hessian_step: Option<f64>,
    /// Grid size for the off-diagonal sweep (run when k >= 8; 0 disables).
    #[arg(long, default_value_t = 100_000)]
    pub offdiag_grid: usize,
}

#[derive(Debug, Args)]
pub struct SaddleArgs {
    /// Degree-sequence file; without it a sequence is sampled from --n/--m.
    #[arg(long, conflicts_with_all = ["n", "m"])]
    pub degrees: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, requires = "m")]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub m: Option<usize>,
    /// Overlap shift ε for the pair coefficient; omitted means single only.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    /// Mean distance of solutions from the majority vote.
    Skew,
    /// Enumerated marginals against literal imbalance.
    Correlation,
    /// Majority weight under the uniform and planted models.
    Wmaj,
    /// Two-step sampler against the uniform model (KS test on w_maj).
    GeneratorKs,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub name: ExperimentName,
    #[command(flatten)]
    pub size: Size,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = ksat_census::DEFAULT_CAP)]
    pub cap: usize,
    /// Write one JSON object per trial, then a summary object, to this file.
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}
