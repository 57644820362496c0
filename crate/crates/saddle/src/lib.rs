//! Coefficient extraction for the generating functions that count
//! assignments (and pairs of assignments) of prescribed true-literal weight.
//!
//! For degree pairs `(d_v, d_¬v)` the single-assignment count is the central
//! coefficient of `∏_v (z^{d_v} + z^{d_¬v})`, and the pair count with overlap
//! `u` is a coefficient of
//! `F(x,y,u) = ∏_v ((xyu)^{d_v} + (xyu)^{d_¬v} + x^{d_v}y^{d_¬v} + x^{d_¬v}y^{d_v})`.
//! Each has an exact big-integer oracle and a saddle-point approximation.
//! [`local_limit`] evaluates the saddle-point local limit theorem for sums of
//! i.i.d. lattice variables.

mod exact;
mod lattice;
mod llt;
mod simple;
mod triple;

use thiserror::Error;

pub use exact::{exact_coefficient, exact_triple_coefficient, exact_triple_spectrum, MAX_TRIPLE_N};
pub use lattice::IntLattice;
pub use llt::{local_limit, local_limit_near_mean, LocalLimit, PgfSpec};
pub use simple::{coeff_simple_asymptotic, SimpleAsymptotic};
pub use triple::{
    coeff_triple_asymptotic, overlap_target, solve_rho, triple_exponential, QuadraticForm,
    TripleAsymptotic,
};

/// A degree pair `(d_v, d_¬v)`.
pub type DegreePair = (u64, u64);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SaddleError {
    #[error("total degree {0} is odd, so there is no central coefficient")]
    OddTotal(u64),
    #[error("ε = {0} must lie in (−1/4, 1/4)")]
    EpsilonOutOfRange(f64),
    #[error("overlap target (1/4 + ε)·M = {0} is not an integer")]
    NonIntegralTarget(f64),
    #[error("{n} pairs exceed the exact triple oracle's limit of {limit}")]
    TooManyPairs { n: usize, limit: usize },
    #[error("α = {alpha} must lie strictly between {low} and {high}")]
    AlphaOutOfRange { alpha: f64, low: f64, high: f64 },
    #[error("invalid generating function: {0}")]
    InvalidPgf(String),
    #[error("saddle-point equation has no solution: {0}")]
    NoSaddle(String),
    #[error("no degree mass: every pair is (0, 0)")]
    NoMass,
}

pub type Result<T> = std::result::Result<T, SaddleError>;

/// `M = Σ_v (d_v + d_¬v)`.
pub fn total_degree(pairs: &[DegreePair]) -> u64 {
    pairs.iter().map(|&(a, b)| a + b).sum()
}
