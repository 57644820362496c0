//! Domain types for random k-CNF formulas.
//!
//! A [`Formula`] is a flat array of `m·k` literal slots. Its
//! [`SignedDegreeSequence`] records how often each literal occurs, and a
//! [`TypeTable`] assigns every literal an exact dyadic "type" derived from the
//! degree imbalance of its variable. Assignments are plain boolean vectors.
//!
//! Text formats: DIMACS CNF for formulas ([`dimacs`]) and a small
//! line-oriented format for degree sequences ([`degree_io`]).

pub mod assignment;
pub mod degree_io;
pub mod degrees;
pub mod dimacs;
mod error;
pub mod formula;
pub mod literal;
pub mod types;

pub use assignment::Assignment;
pub use degrees::SignedDegreeSequence;
pub use error::CoreError;
pub use formula::{degree_sequence_of, Formula};
pub use literal::Literal;
pub use types::{
    build_type_table, clause_type_counts, ClauseType, ClauseTypeCounts, MarginalMap, TypeCode,
    TypeTable,
};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CoreError>;
