use ksat_core::{Assignment, Formula};
use ksat_marginals::majority_vote;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::{CensusError, Result};

/// Default limit on the number of variables an enumeration may touch.
pub const DEFAULT_CAP: usize = 30;

/// Hard ceiling: assignments are packed into `u64` masks and the walker's
/// work grows as `2^n`.
const MAX_VARS: usize = 40;

/// Sub-cube enumeration kernel state: per-clause counts of true literal
/// occurrences and the number of clauses with none.
struct Walker<'a> {
    occ: &'a [Vec<(u32, bool)>],
    true_count: Vec<u32>,
    unsat: usize,
}

impl<'a> Walker<'a> {
    fn new(formula: &Formula, occ: &'a [Vec<(u32, bool)>], mask: u64) -> Self {
        let mut true_count = vec![0u32; formula.m()];
        for (i, c) in formula.clauses().enumerate() {
            true_count[i] = c
                .iter()
                .filter(|l| l.eval((mask >> l.var()) & 1 == 1))
                .count() as u32;
        }
        let unsat = true_count.iter().filter(|&&c| c == 0).count();
        Walker {
            occ,
            true_count,
            unsat,
        }
    }

    #[inline]
    fn flip(&mut self, var: usize, new_value: bool) {
        for &(c, positive) in &self.occ[var] {
            let tc = &mut self.true_count[c as usize];
            if positive == new_value {
                *tc += 1;
                if *tc == 1 {
                    self.unsat -= 1;
                }
            } else {
                *tc -= 1;
                if *tc == 0 {
                    self.unsat += 1;
                }
            }
        }
    }
}

/// Receives satisfying assignments as bitmasks (bit `i` = variable `i`).
pub trait Visitor: Send {
    fn visit(&mut self, mask: u64);
    /// Absorbs the results of the next sub-cube (in enumeration order).
    fn merge(&mut self, other: Self);
}

fn check_cap(formula: &Formula, cap: usize) -> Result<()> {
    let n = formula.n();
    if n > cap.min(MAX_VARS) {
        return Err(CensusError::CapExceeded {
            n,
            cap: cap.min(MAX_VARS),
        });
    }
    Ok(())
}

/// Runs `make()`-built visitors over every satisfying assignment and merges
/// them in a fixed order.
pub fn fold_satisfying<V, F>(formula: &Formula, cap: usize, make: F) -> Result<V>
where
    V: Visitor,
    F: Fn() -> V + Sync,
{
    check_cap(formula, cap)?;
    let n = formula.n();
    let mut occ: Vec<Vec<(u32, bool)>> = vec![Vec::new(); n];
    for (i, c) in formula.clauses().enumerate() {
        for l in c {
            occ[l.var()].push((i as u32, l.is_positive()));
        }
    }
    // Enough sub-cubes to load every core, each still large enough that the
    // O(km) setup is negligible.
    let high = n.saturating_sub(12).min(8);
    let low = n - high;
    let parts: Vec<V> = (0..1u64 << high)
        .into_par_iter()
        .map(|prefix| {
            let mut v = make();
            let base = prefix << low;
            let mut w = Walker::new(formula, &occ, base);
            let mut mask = base;
            if w.unsat == 0 {
                v.visit(mask);
            }
            for i in 1u64..(1u64 << low) {
                let j = i.trailing_zeros() as usize;
                mask ^= 1 << j;
                w.flip(j, (mask >> j) & 1 == 1);
                if w.unsat == 0 {
                    v.visit(mask);
                }
            }
            v
        })
        .collect();
    let mut it = parts.into_iter();
    let mut acc = it.next().expect("at least one sub-cube");
    for p in it {
        acc.merge(p);
    }
    Ok(acc)
}

struct Masks(Vec<u64>);

impl Visitor for Masks {
    fn visit(&mut self, mask: u64) {
        self.0.push(mask);
    }
    fn merge(&mut self, other: Self) {
        self.0.extend(other.0);
    }
}

struct Count(u64);

impl Visitor for Count {
    fn visit(&mut self, _: u64) {
        self.0 += 1;
    }
    fn merge(&mut self, other: Self) {
        self.0 += other.0;
    }
}

/// Satisfying assignments as bitmasks in lexicographic order of
/// `(σ(x_0), σ(x_1), …)`.
pub fn satisfying_masks(formula: &Formula, cap: usize) -> Result<Vec<u64>> {
    let mut m = fold_satisfying(formula, cap, || Masks(Vec::new()))?.0;
    m.sort_unstable_by_key(|x| x.reverse_bits());
    Ok(m)
}

/// All satisfying assignments, lexicographically ordered with `x_0` most
/// significant.
pub fn enumerate_satisfying(formula: &Formula, cap: usize) -> Result<Vec<Assignment>> {
    let n = formula.n();
    Ok(satisfying_masks(formula, cap)?
        .into_iter()
        .map(|m| Assignment::from_mask(n, m))
        .collect())
}

/// `|S(Φ)|`.
pub fn count_satisfying(formula: &Formula, cap: usize) -> Result<u64> {
    Ok(fold_satisfying(formula, cap, || Count(0))?.0)
}

/// Aggregate statistics of the solution set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    /// `|S(Φ)|`.
    pub count: u64,
    /// Number of solutions with `x_i` true, per variable.
    pub true_counts: Vec<u64>,
    /// The majority vote of the formula's degree sequence.
    pub majority: Assignment,
    /// `Σ_{σ∈S} dist(σ, σ_MAJ)`.
    pub majority_distance_sum: u64,
}

impl Census {
    /// `μ_S(x) = |{σ ∈ S : σ(x) = 1}| / |S|`.
    pub fn marginals(&self) -> Result<Vec<f64>> {
        if self.count == 0 {
            return Err(CensusError::Unsatisfiable);
        }
        Ok(self
            .true_counts
            .iter()
            .map(|&c| c as f64 / self.count as f64)
            .collect())
    }

    /// `Σ_{σ∈S} dist(σ, σ_MAJ) / (|S|·n)`, exactly.
    pub fn mean_distance_to_majority(&self) -> Result<Ratio<u64>> {
        if self.count == 0 {
            return Err(CensusError::Unsatisfiable);
        }
        if self.n == 0 {
            return Ok(Ratio::from_integer(0));
        }
        Ok(Ratio::new(
            self.majority_distance_sum,
            self.count * self.n as u64,
        ))
    }
}

struct CensusVisitor {
    count: u64,
    true_counts: Vec<u64>,
    maj: u64,
    dist: u64,
}

impl Visitor for CensusVisitor {
    fn visit(&mut self, mask: u64) {
        self.count += 1;
        self.dist += (mask ^ self.maj).count_ones() as u64;
        let mut m = mask;
        while m != 0 {
            self.true_counts[m.trailing_zeros() as usize] += 1;
            m &= m - 1;
        }
    }
    fn merge(&mut self, other: Self) {
        self.count += other.count;
        self.dist += other.dist;
        for (a, b) in self.true_counts.iter_mut().zip(other.true_counts) {
            *a += b;
        }
    }
}

/// Counts, per-variable marginals and distance to the majority vote in a
/// single pass.
pub fn census(formula: &Formula, cap: usize) -> Result<Census> {
    let n = formula.n();
    let majority = majority_vote(&formula.degree_sequence());
    check_cap(formula, cap)?;
    let maj = majority.to_mask();
    let v = fold_satisfying(formula, cap, || CensusVisitor {
        count: 0,
        true_counts: vec![0; n],
        maj,
        dist: 0,
    })?;
    Ok(Census {
        n,
        count: v.count,
        true_counts: v.true_counts,
        majority,
        majority_distance_sum: v.dist,
    })
}

/// `μ_S(x)` for every variable; errors on unsatisfiable formulas.
pub fn empirical_marginals(formula: &Formula, cap: usize) -> Result<Vec<f64>> {
    census(formula, cap)?.marginals()
}

/// Average normalised Hamming distance of a satisfying assignment from the
/// majority vote.
pub fn mean_distance_to_majority(formula: &Formula, cap: usize) -> Result<Ratio<u64>> {
    census(formula, cap)?.mean_distance_to_majority()
}

/// Default cluster half-width `δ = k²·2^{−k/2}`.
pub fn default_cluster_delta(k: usize) -> f64 {
    (k * k) as f64 * (2.0f64).powf(-(k as f64) / 2.0)
}

/// `C_σ = {τ ∈ S : dist(σ, τ)/n ∉ [1/2 − δ, 1/2 + δ]}`, in lexicographic
/// order.
pub fn cluster_of(
    sigma: &Assignment,
    formula: &Formula,
    delta: f64,
    cap: usize,
) -> Result<Vec<Assignment>> {
    let n = formula.n();
    if sigma.len() != n {
        return Err(CensusError::LengthMismatch {
            got: sigma.len(),
            expected: n,
        });
    }
    let s = sigma.to_mask();
    let (lo, hi) = (0.5 - delta, 0.5 + delta);
    Ok(satisfying_masks(formula, cap)?
        .into_iter()
        .filter(|&t| {
            let x = (s ^ t).count_ones() as f64 / n as f64;
            x < lo || x > hi
        })
        .map(|t| Assignment::from_mask(n, t))
        .collect())
}
