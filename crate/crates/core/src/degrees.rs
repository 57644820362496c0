//! Signed degree sequences `(d_x, d_¬x)`.

use crate::{CoreError, Literal, Result};

/// Per-variable positive and negative occurrence counts, together with the
/// clause width `k` and clause count `m` they were drawn for.
///
/// Invariant: the counts sum to exactly `k·m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedDegreeSequence {
    k: usize,
    m: usize,
    pairs: Vec<(u64, u64)>,
}

impl SignedDegreeSequence {
    pub fn new(k: usize, m: usize, pairs: Vec<(u64, u64)>) -> Result<Self> {
        if k == 0 {
            return Err(CoreError::ZeroWidth);
        }
        let total: u64 = pairs.iter().map(|&(a, b)| a + b).sum();
        let expected = (k as u64) * (m as u64);
        if total != expected {
            return Err(CoreError::DegreeTotalMismatch { total, expected });
        }
        Ok(SignedDegreeSequence { k, m, pairs })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    /// `k·m`, the total occurrence mass.
    pub fn km(&self) -> u64 {
        (self.k as u64) * (self.m as u64)
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn pair(&self, var: usize) -> (u64, u64) {
        self.pairs[var]
    }

    /// Occurrence count of a single literal.
    pub fn degree(&self, l: Literal) -> u64 {
        let (p, q) = self.pairs[l.var()];
        if l.is_positive() {
            p
        } else {
            q
        }
    }

    /// `d_x − d_¬x`.
    pub fn imbalance(&self, var: usize) -> i64 {
        let (p, q) = self.pairs[var];
        p as i64 - q as i64
    }

    /// Clause density `m/n`.
    pub fn density(&self) -> f64 {
        self.m as f64 / self.n() as f64
    }

    /// Degrees indexed by literal code (length `2n`).
    pub fn literal_degrees(&self) -> Vec<u64> {
        self.pairs.iter().flat_map(|&(p, q)| [p, q]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_is_enforced() {
        assert!(SignedDegreeSequence::new(3, 1, vec![(2, 1)]).is_ok());
        assert_eq!(
            SignedDegreeSequence::new(3, 1, vec![(2, 2)]),
            Err(CoreError::DegreeTotalMismatch {
                total: 4,
                expected: 3
            })
        );
    }

    #[test]
    fn literal_lookup() {
        let d = SignedDegreeSequence::new(2, 3, vec![(4, 1), (0, 1)]).unwrap();
        assert_eq!(d.degree(Literal::positive(0)), 4);
        assert_eq!(d.degree(Literal::negative(1)), 1);
        assert_eq!(d.imbalance(0), 3);
        assert_eq!(d.literal_degrees(), vec![4, 1, 0, 1]);
    }
}
