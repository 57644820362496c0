//! Simulation campaigns at desk scale.
//!
//! Every campaign derives one RNG stream per attempt from the user seed, runs
//! attempts in parallel batches and keeps results in attempt order, so a
//! report is a pure function of its parameters and seed.

pub mod correlation;
pub mod generator;
mod runner;
pub mod skew;
pub mod stats;
pub mod wmaj;

use serde::Serialize;
use thiserror::Error;

pub use correlation::{run_marginal_correlation, CorrelationParams, CorrelationReport};
pub use generator::{run_generator_ks, GeneratorKsParams, GeneratorKsReport};
pub use skew::{run_majority_skew, SkewParams, SkewReport};
pub use wmaj::{run_wmaj_fluctuation, WmajParams, WmajReport};

/// Build identifier from `git describe`, or `"unknown"` outside a checkout.
pub const BUILD_ID: &str = env!("KSAT_BUILD_ID");

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("only {found} of {wanted} satisfiable instances after {attempts} attempts")]
    TooFewSatisfiable { wanted: usize, found: usize, attempts: usize },
    #[error(transparent)]
    Gen(#[from] ksat_gen::GenError),
    #[error(transparent)]
    Census(#[from] ksat_census::CensusError),
    #[error(transparent)]
    Marginals(#[from] ksat_marginals::MarginalsError),
    #[error(transparent)]
    Bounds(#[from] ksat_bounds::BoundsError),
}

pub type Result<T> = std::result::Result<T, ExperimentError>;

/// Provenance block embedded in every report.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Meta {
    pub experiment: &'static str,
    pub seed: u64,
    pub build_id: &'static str,
}

impl Meta {
    fn new(experiment: &'static str, seed: u64) -> Self {
        Self { experiment, seed, build_id: BUILD_ID }
    }
}
