//! A backtracking model counter, independent of the Gray-code walker.
//!
//! Variables are assigned in index order. Each clause tracks how many of its
//! literal occurrences are true and how many are still unassigned; a clause
//! with neither is falsified and the branch is cut. Once every clause holds a
//! true literal, the remaining `n − depth` variables are free and contribute
//! `2^{n − depth}` models at once.

use ksat_core::Formula;

struct State {
    n: usize,
    m: usize,
    occ: Vec<Vec<(usize, bool)>>,
    true_lits: Vec<u32>,
    open_lits: Vec<u32>,
    satisfied: usize,
}

impl State {
    /// Assigns `var := value`; returns false if some clause became falsified.
    fn assign(&mut self, var: usize, value: bool) -> bool {
        let mut ok = true;
        for idx in 0..self.occ[var].len() {
            let (c, positive) = self.occ[var][idx];
            self.open_lits[c] -= 1;
            if positive == value {
                self.true_lits[c] += 1;
                if self.true_lits[c] == 1 {
                    self.satisfied += 1;
                }
            } else if self.true_lits[c] == 0 && self.open_lits[c] == 0 {
                ok = false;
            }
        }
        ok
    }

    fn unassign(&mut self, var: usize, value: bool) {
        for idx in 0..self.occ[var].len() {
            let (c, positive) = self.occ[var][idx];
            self.open_lits[c] += 1;
            if positive == value {
                self.true_lits[c] -= 1;
                if self.true_lits[c] == 0 {
                    self.satisfied -= 1;
                }
            }
        }
    }

    fn count(&mut self, depth: usize) -> u128 {
        if self.satisfied == self.m {
            return 1u128 << (self.n - depth);
        }
        if depth == self.n {
            return 0;
        }
        let mut total = 0;
        for value in [false, true] {
            if self.assign(depth, value) {
                total += self.count(depth + 1);
            }
            self.unassign(depth, value);
        }
        total
    }
}

/// Number of satisfying assignments of `formula`.
pub fn count_by_backtracking(formula: &Formula) -> u128 {
    let n = formula.n();
    assert!(n < 128, "model counts above 2^127 are not representable");
    let mut occ = vec![Vec::new(); n];
    let mut open_lits = vec![0u32; formula.m()];
    for (i, c) in formula.clauses().enumerate() {
        for l in c {
            occ[l.var()].push((i, l.is_positive()));
            open_lits[i] += 1;
        }
    }
    let mut st = State {
        n,
        m: formula.m(),
        occ,
        true_lits: vec![0; formula.m()],
        open_lits,
        satisfied: 0,
    };
    st.count(0)
}
