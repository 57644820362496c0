//! Overlap vectors and matrices of assignment pairs, in exact rationals.

use std::collections::BTreeMap;

use ksat_core::{Assignment, ClauseType, Formula, Literal, SignedDegreeSequence, TypeCode, TypeTable};
use num_rational::Ratio;

/// Per literal type `t`: the fraction of type-`t` occurrence mass that is
/// true under both assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapVector {
    /// Types with zero mass are omitted (their overlap is undefined).
    pub entries: BTreeMap<TypeCode, Ratio<u64>>,
}

impl OverlapVector {
    pub fn get(&self, t: TypeCode) -> Option<Ratio<u64>> {
        self.entries.get(&t).copied()
    }
}

/// Per clause type `ℓ` and position `j`: the fraction of type-`ℓ` clauses
/// whose `j`-th literal is true under both assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapMatrix {
    pub k: usize,
    pub entries: BTreeMap<ClauseType, Vec<Ratio<u64>>>,
    /// `m(ℓ)` for every clause type present.
    pub clause_counts: BTreeMap<ClauseType, u64>,
}

/// `O_t(σ,τ) = Σ_{l : p(l)=t} d_l·σ(l)·τ(l) / (π(t)·km)`.
pub fn overlap_vector(
    sigma: &Assignment,
    tau: &Assignment,
    d: &SignedDegreeSequence,
    table: &TypeTable,
) -> OverlapVector {
    let mut both: BTreeMap<TypeCode, u64> = BTreeMap::new();
    for (code, &deg) in d.literal_degrees().iter().enumerate() {
        let l = Literal::from_code(code);
        if sigma.literal_value(l) && tau.literal_value(l) {
            *both.entry(table.literal_code(l)).or_insert(0) += deg;
        }
    }
    let entries = table
        .types()
        .into_iter()
        .filter(|&t| table.mass(t) > 0)
        .map(|t| {
            let num = both.get(&t).copied().unwrap_or(0);
            (t, Ratio::new(num, table.mass(t)))
        })
        .collect();
    OverlapVector { entries }
}

/// The overlap matrix `ω_{ℓ,j}` of `σ, τ` in `formula`.
pub fn overlap_matrix(
    sigma: &Assignment,
    tau: &Assignment,
    formula: &Formula,
    table: &TypeTable,
) -> OverlapMatrix {
    let k = formula.k();
    let mut raw: BTreeMap<ClauseType, (u64, Vec<u64>)> = BTreeMap::new();
    for c in formula.clauses() {
        let e = raw
            .entry(table.clause_type(c))
            .or_insert_with(|| (0, vec![0; k]));
        e.0 += 1;
        for (j, &l) in c.iter().enumerate() {
            if sigma.literal_value(l) && tau.literal_value(l) {
                e.1[j] += 1;
            }
        }
    }
    let mut entries = BTreeMap::new();
    let mut clause_counts = BTreeMap::new();
    for (l, (m_l, hits)) in raw {
        entries.insert(
            l.clone(),
            hits.into_iter().map(|h| Ratio::new(h, m_l)).collect(),
        );
        clause_counts.insert(l, m_l);
    }
    OverlapMatrix {
        k,
        entries,
        clause_counts,
    }
}

/// The overlap vector implied by a matrix:
/// `O_t = Σ_{ℓ,j : ℓ_j = t} m(ℓ)·ω_{ℓ,j} / (π(t)·km)`.
pub fn overlap_from_matrix(matrix: &OverlapMatrix, table: &TypeTable) -> OverlapVector {
    let mut acc: BTreeMap<TypeCode, Ratio<u64>> = BTreeMap::new();
    for (l, row) in &matrix.entries {
        let m_l = Ratio::from_integer(matrix.clause_counts[l]);
        for (&t, &w) in l.0.iter().zip(row) {
            *acc.entry(t).or_insert_with(|| Ratio::from_integer(0)) += m_l * w;
        }
    }
    let entries = table
        .types()
        .into_iter()
        .filter(|&t| table.mass(t) > 0)
        .map(|t| {
            let num = acc.get(&t).copied().unwrap_or_else(|| Ratio::from_integer(0));
            (t, num / Ratio::from_integer(table.mass(t)))
        })
        .collect();
    OverlapVector { entries }
}
