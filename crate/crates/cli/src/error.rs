use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input, or a refused workload.
    #[error("{0}")]
    Usage(String),
    /// A computation failed or a verification found a counterexample.
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Failure(_) => "failure",
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ksat_core::CoreError> for CliError {
    fn from(e: ksat_core::CoreError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ksat_gen::GenError> for CliError {
    fn from(e: ksat_gen::GenError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ksat_census::CensusError> for CliError {
    fn from(e: ksat_census::CensusError) -> Self {
        match e {
            ksat_census::CensusError::Unsatisfiable => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ksat_marginals::MarginalsError> for CliError {
    fn from(e: ksat_marginals::MarginalsError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ksat_bounds::BoundsError> for CliError {
    fn from(e: ksat_bounds::BoundsError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ksat_moments::MomentsError> for CliError {
    fn from(e: ksat_moments::MomentsError) -> Self {
        use ksat_moments::MomentsError as E;
        match e {
            E::Domain(_) | E::InfeasibleOverlap(_) | E::TooManyClauseTypes { .. } => {
                CliError::Usage(e.to_string())
            }
            E::NoConvergence { .. } => CliError::Failure(e.to_string()),
        }
    }
}

impl From<ksat_saddle::SaddleError> for CliError {
    fn from(e: ksat_saddle::SaddleError) -> Self {
        use ksat_saddle::SaddleError as E;
        match e {
            E::NoSaddle(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ksat_experiments::ExperimentError> for CliError {
    fn from(e: ksat_experiments::ExperimentError) -> Self {
        use ksat_experiments::ExperimentError as E;
        match e {
            E::TooFewSatisfiable { .. } => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}
