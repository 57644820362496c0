//! k-CNF formulas stored as a flat slot array.

use crate::{Assignment, CoreError, Literal, Result, SignedDegreeSequence};

/// A k-CNF over `n` variables with `m` clauses of exactly `k` literals.
///
/// Repeated and complementary literals inside a clause are allowed: the
/// uniform model draws each of the `km` slots independently from the `2n`
/// literals, and we keep whatever it draws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    n: usize,
    k: usize,
    slots: Vec<Literal>,
}

impl Formula {
    /// Builds a formula from explicit clauses, checking width and range.
    pub fn new(n: usize, k: usize, clauses: &[Vec<Literal>]) -> Result<Self> {
        if k == 0 {
            return Err(CoreError::ZeroWidth);
        }
        let mut slots = Vec::with_capacity(clauses.len() * k);
        for (i, c) in clauses.iter().enumerate() {
            if c.len() != k {
                return Err(CoreError::WrongClauseWidth {
                    clause: i,
                    len: c.len(),
                    k,
                });
            }
            slots.extend_from_slice(c);
        }
        Self::from_slots(n, k, slots)
    }

    /// Builds a formula from `m·k` consecutive literal slots.
    pub fn from_slots(n: usize, k: usize, slots: Vec<Literal>) -> Result<Self> {
        if k == 0 {
            return Err(CoreError::ZeroWidth);
        }
        if slots.len() % k != 0 {
            return Err(CoreError::WrongClauseWidth {
                clause: slots.len() / k,
                len: slots.len() % k,
                k,
            });
        }
        if let Some(l) = slots.iter().find(|l| l.var() >= n) {
            return Err(CoreError::VariableOutOfRange { var: l.var(), n });
        }
        Ok(Formula { n, k, slots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of clauses.
    pub fn m(&self) -> usize {
        self.slots.len() / self.k
    }

    /// Total number of literal occurrences, `k·m`.
    pub fn km(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Literal] {
        &self.slots
    }

    pub fn clause(&self, i: usize) -> &[Literal] {
        &self.slots[i * self.k..(i + 1) * self.k]
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = &[Literal]> + '_ {
        self.slots.chunks_exact(self.k)
    }

    /// Literal occurrence counts `(d_x, d_¬x)` per variable.
    pub fn degree_sequence(&self) -> SignedDegreeSequence {
        let mut pairs = vec![(0u64, 0u64); self.n];
        for l in &self.slots {
            let p = &mut pairs[l.var()];
            if l.is_positive() {
                p.0 += 1;
            } else {
                p.1 += 1;
            }
        }
        SignedDegreeSequence::new(self.k, self.m(), pairs)
            .expect("occurrence counts always sum to km")
    }

    /// Whether every clause has at least one true literal under `sigma`.
    pub fn is_satisfied_by(&self, sigma: &Assignment) -> bool {
        self.clauses()
            .all(|c| c.iter().any(|&l| sigma.literal_value(l)))
    }

    /// Number of literal occurrences that `sigma` makes true.
    pub fn true_occurrences(&self, sigma: &Assignment) -> usize {
        self.slots
            .iter()
            .filter(|&&l| sigma.literal_value(l))
            .count()
    }

    /// The formula with every literal negated.
    pub fn mirrored(&self) -> Formula {
        Formula {
            n: self.n,
            k: self.k,
            slots: self.slots.iter().map(|&l| !l).collect(),
        }
    }
}

/// Occurrence counts of a formula; free-function form of
/// [`Formula::degree_sequence`].
pub fn degree_sequence_of(formula: &Formula) -> SignedDegreeSequence {
    formula.degree_sequence()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(x: i64) -> Literal {
        Literal::from_dimacs(x).unwrap()
    }

    #[test]
    fn hand_counted_degrees() {
        let f = Formula::new(
            3,
            3,
            &[vec![lit(1), lit(2), lit(3)], vec![lit(1), lit(-2), lit(3)]],
        )
        .unwrap();
        let d = f.degree_sequence();
        assert_eq!(d.pair(0), (2, 0));
        assert_eq!(d.pair(1), (1, 1));
        assert_eq!(d.pair(2), (2, 0));
    }

    #[test]
    fn repeated_literals_count_with_multiplicity() {
        let f = Formula::new(1, 3, &[vec![lit(1), lit(1), lit(1)]]).unwrap();
        assert_eq!(f.degree_sequence().pair(0), (3, 0));
    }

    #[test]
    fn empty_formula_has_zero_degrees() {
        let f = Formula::new(4, 3, &[]).unwrap();
        let d = f.degree_sequence();
        assert_eq!(d.n(), 4);
        assert!(d.pairs().iter().all(|&p| p == (0, 0)));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            Formula::new(3, 3, &[vec![lit(1), lit(2)]]),
            Err(CoreError::WrongClauseWidth { .. })
        ));
        assert!(matches!(
            Formula::new(2, 1, &[vec![lit(3)]]),
            Err(CoreError::VariableOutOfRange { var: 2, n: 2 })
        ));
        assert_eq!(Formula::new(2, 0, &[]), Err(CoreError::ZeroWidth));
    }
}
