//! Exact enumeration of satisfying assignments for small formulas.
//!
//! The enumerator walks the hypercube in Gray-code order, so consecutive
//! assignments differ in one variable and only the clauses containing that
//! variable need updating. The cube is cut into `2^h` sub-cubes by fixing the
//! top `h` variables; sub-cubes run in parallel and their accumulators are
//! merged in sub-cube order, so every result is deterministic.
//!
//! [`backtrack`] is an independent counter used to cross-check the walker.

pub mod backtrack;
mod enumerate;
pub mod overlap;
pub mod spectrum;

use thiserror::Error;

pub use enumerate::{
    census, cluster_of, count_satisfying, default_cluster_delta, empirical_marginals,
    enumerate_satisfying, fold_satisfying, mean_distance_to_majority, satisfying_masks, Census,
    Visitor, DEFAULT_CAP,
};
pub use overlap::{overlap_from_matrix, overlap_matrix, overlap_vector, OverlapMatrix, OverlapVector};
pub use spectrum::pair_distance_spectrum;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("formula has {n} variables, above the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("formula is unsatisfiable; the quantity is undefined")]
    Unsatisfiable,
    #[error("assignment has {got} variables, formula has {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, CensusError>;
