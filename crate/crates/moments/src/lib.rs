//! Numerics of the first and second moment computations.
//!
//! * [`rates`]: the entropy `χ` and the binomial rate function `ψ`.
//! * [`offdiag`]: the pair exponent along the diagonal family of overlaps and
//!   a grid check that it stays negative away from `1/2`.
//! * [`first`]: per-clause-type tilting vectors `q` and the assembled
//!   first-moment exponent.
//! * [`pair`]: the coupled `(q, q¹¹)` system for pairs of assignments, the
//!   exponent `P_ℓ(ω)` and finite-difference derivatives at `ω* = ℓ²`.

pub mod first;
mod newton;
pub mod offdiag;
pub mod pair;
pub mod rates;

use thiserror::Error;

pub use first::{
    first_moment_exponent, solve_first_moment_q, ClauseWeights, FirstMomentReport,
    FirstMomentSolution, TypeEntry, TypeProfile,
};
pub use offdiag::{offdiag_exponent, verify_offdiag, OffdiagReport};
pub use pair::{
    check_hessian_bound, pair_exponent, pair_gradient, product_exponent, solve_pair_q, HessianReport,
    PairMomentSolution,
};
pub use rates::{binom_rate, entropy};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MomentsError {
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("overlap vector is infeasible: {0}")]
    InfeasibleOverlap(String),
    #[error("{count} clause types exceed the enumeration limit {limit}")]
    TooManyClauseTypes { count: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, MomentsError>;

/// Residual tolerance every fixed-point solve must reach.
pub const RESIDUAL_TOL: f64 = 1e-12;
/// Iteration budget for the Newton solvers.
pub const MAX_ITERATIONS: usize = 200;
