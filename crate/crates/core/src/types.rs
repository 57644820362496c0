//! Literal types: the exact dyadic marginals `1/2 + z/2^{k+1}`.
//!
//! Every literal receives a type derived from its variable's degree imbalance
//! `z = d_x − d_¬x` through the truncated linear map of [`MarginalMap`]. Types
//! are stored by their integer offset `z`, so equality is exact and a type
//! and its complement are `z` and `−z`.

use std::collections::BTreeMap;
use std::fmt;

use crate::{CoreError, Formula, Literal, Result, SignedDegreeSequence};

/// A literal type `t = 1/2 + z/2^{k+1}`, identified by the integer `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeCode(pub i64);

impl TypeCode {
    pub const HALF: TypeCode = TypeCode(0);

    /// Numeric value of the type for clause width `k`.
    pub fn value(self, k: usize) -> f64 {
        0.5 + self.0 as f64 / pow2(k + 1)
    }

    /// Exact value as `numerator / 2^{k+1}`.
    pub fn numerator(self, k: usize) -> i128 {
        (1i128 << k) + self.0 as i128
    }

    /// The type of the complementary literal, `1 − t`.
    pub fn complement(self) -> TypeCode {
        TypeCode(-self.0)
    }

    pub fn is_half(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for TypeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn pow2(e: usize) -> f64 {
    (2.0f64).powi(e as i32)
}

/// The truncated linear marginal `z ↦ 1/2 + z/2^{k+1}`, which falls back to
/// `1/2` once `|z|` exceeds `10·√(k·2^k·ln k)`.
///
/// For small `k` that radius exceeds `2^k`, where the linear form would leave
/// `[0, 1]`; the radius is therefore capped at `2^k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarginalMap {
    k: usize,
    cutoff_sq: f64,
    linear_limit: f64,
}

impl MarginalMap {
    pub fn new(k: usize) -> Self {
        let kf = k as f64;
        MarginalMap {
            k,
            cutoff_sq: 100.0 * kf * pow2(k) * kf.ln(),
            linear_limit: pow2(k),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `10·√(k·2^k·ln k)` before capping.
    pub fn nominal_radius(&self) -> f64 {
        self.cutoff_sq.sqrt()
    }

    /// The truncation radius `min(10·√(k·2^k·ln k), 2^k)`.
    pub fn cutoff(&self) -> f64 {
        self.cutoff_sq.sqrt().min(self.linear_limit)
    }

    /// Whether `|z|` lies within the truncation radius.
    pub fn within_cutoff(&self, z: i64) -> bool {
        let zf = z as f64;
        zf * zf <= self.cutoff_sq && zf.abs() <= self.linear_limit
    }

    /// The type assigned to imbalance `z`.
    pub fn code(&self, z: i64) -> TypeCode {
        if self.within_cutoff(z) {
            TypeCode(z)
        } else {
            TypeCode::HALF
        }
    }

    /// `p(z)` as a float (exact for moderate `k`, since it is dyadic).
    pub fn p(&self, z: i64) -> f64 {
        self.code(z).value(self.k)
    }
}

/// Whether the signature `(d⁺, d⁻)` is good for a sequence with clause width
/// `k` and density `m/n`: both degrees below `3kr/4` and
/// `0 < (d⁺ − d⁻)² ≤ 100·k·2^k·ln k`.
pub fn is_good_signature(d_pos: u64, d_neg: u64, k: usize, m: usize, n: usize) -> bool {
    // d < 3k(m/n)/4  <=>  4·d·n < 3·k·m, kept in integers.
    let lim = 3u128 * k as u128 * m as u128;
    let below = |d: u64| 4u128 * d as u128 * (n as u128) < lim;
    let z = d_pos as i64 - d_neg as i64;
    z != 0 && below(d_pos) && below(d_neg) && MarginalMap::new(k).within_cutoff(z)
}

/// A clause type: the k-tuple of literal types of a clause, in slot order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClauseType(pub Vec<TypeCode>);

impl ClauseType {
    pub fn values(&self, k: usize) -> Vec<f64> {
        self.0.iter().map(|t| t.value(k)).collect()
    }
}

/// The number `m(ℓ)` of clauses of each clause type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClauseTypeCounts {
    pub counts: BTreeMap<ClauseType, usize>,
}

impl ClauseTypeCounts {
    /// `Σ_ℓ m(ℓ)`.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn get(&self, l: &ClauseType) -> usize {
        self.counts.get(l).copied().unwrap_or(0)
    }

    /// Number of clause slots demanding each literal type,
    /// `Σ_ℓ m(ℓ)·#{j : ℓ_j = t}`.
    pub fn slot_demand(&self) -> BTreeMap<TypeCode, u64> {
        let mut out = BTreeMap::new();
        for (l, &c) in &self.counts {
            for &t in &l.0 {
                *out.entry(t).or_insert(0) += c as u64;
            }
        }
        out
    }
}

/// Literal types of a degree sequence, with integer occurrence masses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTable {
    k: usize,
    km: u64,
    var_codes: Vec<TypeCode>,
    good: Vec<bool>,
    masses: BTreeMap<TypeCode, u64>,
    var_counts: BTreeMap<TypeCode, usize>,
}

/// Assigns every literal of `d` its type.
///
/// Variables whose signature is not good get type `1/2` for both literals.
pub fn build_type_table(d: &SignedDegreeSequence) -> Result<TypeTable> {
    let k = d.k();
    let km = d.km();
    if km == 0 {
        return Err(CoreError::NoOccurrenceMass);
    }
    let n = d.n();
    let mut var_codes = Vec::with_capacity(n);
    let mut good = Vec::with_capacity(n);
    let mut masses: BTreeMap<TypeCode, u64> = BTreeMap::new();
    let mut var_counts: BTreeMap<TypeCode, usize> = BTreeMap::new();
    for &(p, q) in d.pairs() {
        let g = is_good_signature(p, q, k, d.m(), n);
        let code = if g {
            TypeCode(p as i64 - q as i64)
        } else {
            TypeCode::HALF
        };
        var_codes.push(code);
        good.push(g);
        *masses.entry(code).or_insert(0) += p;
        *masses.entry(code.complement()).or_insert(0) += q;
        *var_counts.entry(code).or_insert(0) += 1;
    }
    Ok(TypeTable {
        k,
        km,
        var_codes,
        good,
        masses,
        var_counts,
    })
}

impl TypeTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn km(&self) -> u64 {
        self.km
    }

    pub fn n(&self) -> usize {
        self.var_codes.len()
    }

    pub fn marginal_map(&self) -> MarginalMap {
        MarginalMap::new(self.k)
    }

    /// Type of the positive literal of `var`.
    pub fn var_code(&self, var: usize) -> TypeCode {
        self.var_codes[var]
    }

    pub fn literal_code(&self, l: Literal) -> TypeCode {
        let c = self.var_codes[l.var()];
        if l.is_positive() {
            c
        } else {
            c.complement()
        }
    }

    /// `p_d(l)` as a float.
    pub fn literal_value(&self, l: Literal) -> f64 {
        self.literal_code(l).value(self.k)
    }

    pub fn is_good(&self, var: usize) -> bool {
        self.good[var]
    }

    /// The type set `T`, closed under complement.
    ///
    /// Complements of types that carry no mass are included with mass zero, so
    /// `1 − t ∈ T` holds for every `t ∈ T`.
    pub fn types(&self) -> Vec<TypeCode> {
        let mut out: Vec<TypeCode> = self.masses.keys().copied().collect();
        for t in self.masses.keys() {
            out.push(t.complement());
        }
        out.sort();
        out.dedup();
        out
    }

    /// Occurrence mass `π(t)·km` of type `t`, as an integer.
    pub fn mass(&self, t: TypeCode) -> u64 {
        self.masses.get(&t).copied().unwrap_or(0)
    }

    /// `π(t)`.
    pub fn pi(&self, t: TypeCode) -> f64 {
        self.mass(t) as f64 / self.km as f64
    }

    /// Number of variables whose positive literal has type `t`.
    pub fn n_of(&self, t: TypeCode) -> usize {
        self.var_counts.get(&t).copied().unwrap_or(0)
    }

    pub fn masses(&self) -> &BTreeMap<TypeCode, u64> {
        &self.masses
    }

    /// Clause type of a clause under this table.
    pub fn clause_type(&self, clause: &[Literal]) -> ClauseType {
        ClauseType(clause.iter().map(|&l| self.literal_code(l)).collect())
    }
}

/// Counts the clauses of `formula` per clause type.
pub fn clause_type_counts(formula: &Formula, table: &TypeTable) -> ClauseTypeCounts {
    let mut counts = BTreeMap::new();
    for c in formula.clauses() {
        *counts.entry(table.clause_type(c)).or_insert(0) += 1;
    }
    ClauseTypeCounts { counts }
}
