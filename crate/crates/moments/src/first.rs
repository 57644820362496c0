//! First moment: tilting vectors per clause type and the assembled exponent
//! `ln E[Z]/n = entropy + ln P̂[S]/n − ln P̂[B]/n`.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use ksat_core::{ClauseTypeCounts, TypeTable};
use serde::Serialize;

use crate::newton;
use crate::rates::{binom_rate_unchecked, entropy};
use crate::{MomentsError, Result};

/// Tilting vector `q` for one clause type `ℓ`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FirstMomentSolution {
    pub ell: Vec<f64>,
    pub q: Vec<f64>,
    /// Max-norm residual of `q_j / (1 − ∏(1−q)) = ℓ_j`.
    pub residual: f64,
    pub iterations: usize,
    /// `ln(1 − ∏_j (1 − q_j))`, the log-probability that the clause is satisfied.
    pub ln_sat: f64,
    /// `Σ_j ψ(q_j, ℓ_j)`.
    pub ln_balance: f64,
}

/// `ln(1 − ∏(1−q_j))`, computed without forming the product directly.
pub(crate) fn ln_one_minus_prod(q: &[f64]) -> f64 {
    let log_prod: f64 = q.iter().map(|&v| (-v).ln_1p()).sum();
    (-log_prod.exp_m1()).ln()
}

fn first_residual(q: &[f64], ell: &[f64]) -> Option<Vec<f64>> {
    if q.iter().any(|&v| !(v > 0.0 && v < 1.0)) {
        return None;
    }
    let log_prod: f64 = q.iter().map(|&v| (-v).ln_1p()).sum();
    let sat = -log_prod.exp_m1();
    Some(q.iter().zip(ell).map(|(&qj, &lj)| qj / sat - lj).collect())
}

/// Solves `q_j / (1 − ∏_l (1 − q_l)) = ℓ_j` by damped Newton from `q = ℓ`.
///
/// Requires `ℓ ∈ (0,1)^k` with `Σ_j ℓ_j > 1`.
pub fn solve_first_moment_q(ell: &[f64]) -> Result<FirstMomentSolution> {
    if ell.is_empty() || ell.iter().any(|&v| !(v > 0.0 && v < 1.0)) {
        return Err(MomentsError::Domain(format!("clause type entries must lie in (0,1): {ell:?}")));
    }
    // A satisfied clause has at least one true literal, so Σ_j q̂_j ≥ 1.
    if ell.iter().sum::<f64>() <= 1.0 {
        return Err(MomentsError::Domain(format!(
            "clause type entries must sum to more than 1: {ell:?}"
        )));
    }
    let solved = newton::solve(ell.to_vec(), |q| first_residual(q, ell))?;
    let q = solved.x;
    let ln_sat = ln_one_minus_prod(&q);
    let ln_balance = q.iter().zip(ell).map(|(&p, &l)| binom_rate_unchecked(p, l)).sum();
    Ok(FirstMomentSolution {
        ell: ell.to_vec(),
        q,
        residual: solved.residual,
        iterations: solved.iterations,
        ln_sat,
        ln_balance,
    })
}

/// One literal type as it enters the exponent.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TypeEntry {
    /// Marginal value `t ∈ (0,1)`.
    pub value: f64,
    /// Share `π(t)` of literal occurrences carrying this type.
    pub pi: f64,
    /// Fraction of variables whose positive literal has this type.
    pub var_fraction: f64,
}

/// The literal types of an instance, reduced to the numbers the exponent
/// needs. Can be built from a [`TypeTable`] or written down directly for
/// idealised tables.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TypeProfile {
    pub k: usize,
    pub entries: Vec<TypeEntry>,
}

impl TypeProfile {
    pub fn new(k: usize, entries: Vec<TypeEntry>) -> Self {
        Self { k, entries }
    }

    pub fn from_table(table: &TypeTable) -> Self {
        let k = table.k();
        let n = table.n().max(1) as f64;
        let entries = table
            .types()
            .into_iter()
            .map(|t| TypeEntry {
                value: t.value(k),
                pi: table.pi(t),
                var_fraction: table.n_of(t) as f64 / n,
            })
            .collect();
        Self { k, entries }
    }

    /// A single type 1/2 carrying all occurrences.
    pub fn balanced(k: usize) -> Self {
        Self::new(k, vec![TypeEntry { value: 0.5, pi: 1.0, var_fraction: 1.0 }])
    }

    /// Idealised table in which every variable has imbalance
    /// `a = round(√(kr))` towards its positive literal: positive literals get
    /// type `t = 1/2 + a/2^{k+1}` and negative ones `1 − t`, with occurrence
    /// shares `(c + a)/(2c + a)` and `c/(2c + a)` for `c = (kr − a)/2`.
    pub fn two_type(k: usize, r: f64) -> Self {
        let kr = k as f64 * r;
        let a = kr.sqrt().round();
        let c = (kr - a) / 2.0;
        let t = 0.5 + a / 2f64.powi(k as i32 + 1);
        Self::new(
            k,
            vec![
                TypeEntry { value: t, pi: (c + a) / (2.0 * c + a), var_fraction: 1.0 },
                TypeEntry { value: 1.0 - t, pi: c / (2.0 * c + a), var_fraction: 0.0 },
            ],
        )
    }

    /// `Σ_t (n(t)/n)·χ(t)`.
    pub fn entropy_term(&self) -> f64 {
        self.entries.iter().map(|e| e.var_fraction * entropy(e.value)).sum()
    }
}

/// How the per-clause-type weights `γ_ℓ` (clauses of type `ℓ` per variable)
/// are obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum ClauseWeights {
    /// `γ_ℓ = r·∏_j π(ℓ_j)`, summed over all ordered types.
    Product { r: f64 },
    /// Explicit `(ℓ, γ_ℓ)` pairs, typically `m(ℓ)/n` from a formula.
    Realized(Vec<(Vec<f64>, f64)>),
}

impl ClauseWeights {
    /// `γ_ℓ = m(ℓ)/n` from the clause-type counts of a formula.
    pub fn realized(counts: &ClauseTypeCounts, table: &TypeTable) -> Self {
        let n = table.n().max(1) as f64;
        let k = table.k();
        ClauseWeights::Realized(
            counts.counts.iter().map(|(l, &c)| (l.values(k), c as f64 / n)).collect(),
        )
    }
}

/// Largest number of unordered clause types the product form will enumerate.
pub const MAX_CLAUSE_TYPES: u128 = 2_000_000;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FirstMomentReport {
    pub k: usize,
    /// Clause density `Σ_ℓ γ_ℓ`.
    pub r: f64,
    /// `ρ = 2^k ln2 − r`.
    pub rho: f64,
    pub entropy_term: f64,
    /// `ln P̂[S]/n`.
    pub ln_sat: f64,
    /// `ln P̂[B]/n`.
    pub ln_balance: f64,
    pub exponent: f64,
    /// `2^k · exponent`.
    pub scaled: f64,
    /// `2^{−k}(ρ − ln2/2)`, the target for tables that follow the marginal map.
    pub reference: f64,
    /// `2^{−k}(ρ − ln2/2 − k·ln2/2)`, the target for the balanced table.
    pub reference_balanced: f64,
    pub clause_types_solved: usize,
    pub max_residual: f64,
}

fn bits_key(ell: &[f64]) -> Vec<u64> {
    let mut key: Vec<u64> = ell.iter().map(|v| v.to_bits()).collect();
    key.sort_unstable();
    key
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Assembles the first-moment exponent for a type profile.
pub fn first_moment_exponent(
    profile: &TypeProfile,
    weights: &ClauseWeights,
) -> Result<FirstMomentReport> {
    let k = profile.k;
    let terms: Vec<(Vec<f64>, f64)> = match weights {
        ClauseWeights::Realized(list) => list.clone(),
        ClauseWeights::Product { r } => product_terms(profile, *r)?,
    };

    let mut cache: BTreeMap<Vec<u64>, FirstMomentSolution> = BTreeMap::new();
    let (mut r, mut ln_sat, mut ln_balance, mut max_residual) = (0.0, 0.0, 0.0, 0f64);
    for (ell, gamma) in &terms {
        if ell.len() != k {
            return Err(MomentsError::Domain(format!(
                "clause type of width {} in a k = {k} profile",
                ell.len()
            )));
        }
        let key = bits_key(ell);
        if !cache.contains_key(&key) {
            let mut sorted = ell.clone();
            sorted.sort_by(f64::total_cmp);
            cache.insert(key.clone(), solve_first_moment_q(&sorted)?);
        }
        let sol = &cache[&key];
        r += gamma;
        ln_sat += gamma * sol.ln_sat;
        ln_balance += gamma * sol.ln_balance;
        max_residual = max_residual.max(sol.residual);
    }

    let entropy_term = profile.entropy_term();
    let exponent = entropy_term + ln_sat - ln_balance;
    let scale = 2f64.powi(k as i32);
    let rho = scale * LN_2 - r;
    Ok(FirstMomentReport {
        k,
        r,
        rho,
        entropy_term,
        ln_sat,
        ln_balance,
        exponent,
        scaled: exponent * scale,
        reference: (rho - LN_2 / 2.0) / scale,
        reference_balanced: (rho - LN_2 / 2.0 - k as f64 * LN_2 / 2.0) / scale,
        clause_types_solved: cache.len(),
        max_residual,
    })
}

/// Unordered clause types with weight `r·(k!/∏c!)·∏π`, skipping massless types.
fn product_terms(profile: &TypeProfile, r: f64) -> Result<Vec<(Vec<f64>, f64)>> {
    let k = profile.k;
    let types: Vec<&TypeEntry> = profile.entries.iter().filter(|e| e.pi > 0.0).collect();
    let t = types.len() as u128;
    if t == 0 {
        return Err(MomentsError::Domain("type profile carries no occurrence mass".into()));
    }
    let count = binomial(t + k as u128 - 1, k as u128);
    if count > MAX_CLAUSE_TYPES {
        return Err(MomentsError::TooManyClauseTypes { count, limit: MAX_CLAUSE_TYPES });
    }
    let ln_fact = |n: usize| (1..=n).map(|i| (i as f64).ln()).sum::<f64>();
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; k];
    loop {
        let mut ln_w = ln_fact(k);
        let mut run = 1;
        for j in 0..k {
            ln_w += types[idx[j]].pi.ln();
            if j + 1 < k && idx[j + 1] == idx[j] {
                run += 1;
            } else {
                ln_w -= ln_fact(run);
                run = 1;
            }
        }
        out.push((idx.iter().map(|&i| types[i].value).collect(), r * ln_w.exp()));

        // Next non-decreasing index tuple.
        let Some(pos) = (0..k).rev().find(|&j| idx[j] + 1 < types.len()) else {
            break;
        };
        let v = idx[pos] + 1;
        for slot in idx.iter_mut().skip(pos) {
            *slot = v;
        }
    }
    Ok(out)
}
