//! Truth assignments over the variables of a formula.

use crate::{CoreError, Literal, Result};

/// A 0/1 vector indexed by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all_true(n: usize) -> Self {
        Assignment::new(vec![true; n])
    }

    pub fn all_false(n: usize) -> Self {
        Assignment::new(vec![false; n])
    }

    /// Decodes a bitmask where bit `i` holds the value of variable `i`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "bitmask assignments support at most 64 variables");
        Assignment::new((0..n).map(|i| (mask >> i) & 1 == 1).collect())
    }

    /// Inverse of [`Assignment::from_mask`]; panics beyond 64 variables.
    pub fn to_mask(&self) -> u64 {
        assert!(self.values.len() <= 64);
        self.values
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i))
    }

    /// Checks that the assignment covers exactly `n` variables.
    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() == n {
            Ok(())
        } else {
            Err(CoreError::AssignmentLength {
                got: self.values.len(),
                expected: n,
            })
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, var: usize) -> bool {
        self.values[var]
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.values[var] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Truth value of literal `l`: the variable's value, flipped for `¬x`.
    pub fn literal_value(&self, l: Literal) -> bool {
        l.eval(self.values[l.var()])
    }

    /// Hamming distance; both assignments must have the same length.
    pub fn distance(&self, other: &Assignment) -> usize {
        assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Number of variables set to true.
    pub fn count_true(&self) -> usize {
        self.values.iter().filter(|&&b| b).count()
    }

    /// The complementary assignment.
    pub fn flipped(&self) -> Assignment {
        Assignment::new(self.values.iter().map(|b| !b).collect())
    }
}
