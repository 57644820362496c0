//! Exact oracles.

use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::BTreeMap;

use crate::{total_degree, DegreePair, Result, SaddleError};

/// `[z^target] ∏_v (z^{d_v} + z^{d_¬v})` by direct convolution.
pub fn exact_coefficient(pairs: &[DegreePair], target: u64) -> BigUint {
    let total = total_degree(pairs);
    if target > total {
        return BigUint::zero();
    }
    // Factor out z^{min(d, d')} from every factor; what remains is a product
    // of binomials 1 + z^{|d − d'|}.
    let base: u64 = pairs.iter().map(|&(a, b)| a.min(b)).sum();
    if target < base {
        return BigUint::zero();
    }
    let need = (target - base) as usize;
    let mut poly = vec![BigUint::zero(); need + 1];
    poly[0] = BigUint::from(1u32);
    let mut reach = 0usize;
    for &(a, b) in pairs {
        let gap = a.abs_diff(b) as usize;
        if gap == 0 {
            for c in poly.iter_mut().take(reach + 1) {
                *c <<= 1;
            }
            continue;
        }
        reach = (reach + gap).min(need);
        for i in (gap..=reach).rev() {
            let (lo, hi) = poly.split_at_mut(i);
            if !lo[i - gap].is_zero() {
                hi[0] += &lo[i - gap];
            }
        }
    }
    poly.swap_remove(need)
}

/// Largest number of pairs the exact triple oracle accepts; counts are
/// accumulated in `u128` and are bounded by `4^N`.
pub const MAX_TRIPLE_N: usize = 60;

/// Dense table of pair counts indexed by `(G, |e|, |f|)`.
///
/// A pair of assignments `(σ, τ)` is split into the agree set `S` where
/// `σ = τ` and its complement. Writing `D_v = d_v − d_¬v`, `g_v = d_v + d_¬v`
/// and `s_v = ±1` for `σ(v)`, the pair has `x`- and `y`-weight `M/2` exactly
/// when `Σ_{S} s_v D_v = 0` and `Σ_{S^c} s_v D_v = 0`, and its overlap is then
/// `g(S)/2`. The table tracks `G = g(S)`, `e = Σ_S s_v D_v` and
/// `f = Σ_{S^c} s_v D_v`. Counts are even in `e` and in `f` separately, so
/// only the quadrant `e, f ≥ 0` is stored.
struct Table {
    g_lo: u64,
    g_len: usize,
    e_len: usize,
    f_len: usize,
    cells: Vec<u128>,
}

impl Table {
    fn get(&self, g: u64, e: i64, f: i64) -> u128 {
        let (e, f) = (e.unsigned_abs() as usize, f.unsigned_abs() as usize);
        if g < self.g_lo || e >= self.e_len || f >= self.f_len {
            return 0;
        }
        let gi = (g - self.g_lo) as usize;
        if gi >= self.g_len {
            return 0;
        }
        self.cells[(gi * self.e_len + e) * self.f_len + f]
    }
}

/// Runs the agree-set recursion. With `target = Some(G*)` only states that
/// can still reach `G = G*` are kept.
fn agree_set_table(pairs: &[DegreePair], target: Option<u64>) -> Result<Table> {
    if pairs.len() > MAX_TRIPLE_N {
        return Err(SaddleError::TooManyPairs { n: pairs.len(), limit: MAX_TRIPLE_N });
    }
    let gaps: Vec<i64> = pairs.iter().map(|&(a, b)| a.abs_diff(b) as i64).collect();
    let sizes: Vec<u64> = pairs.iter().map(|&(a, b)| a + b).collect();
    let mut gap_left: i64 = gaps.iter().sum();
    let mut size_left: u64 = sizes.iter().sum();
    let (mut gap_done, mut size_done) = (0i64, 0u64);

    let mut table = Table { g_lo: 0, g_len: 1, e_len: 1, f_len: 1, cells: vec![1] };
    for (&gap, &size) in gaps.iter().zip(&sizes) {
        gap_left -= gap;
        size_left -= size;
        gap_done += gap;
        size_done += size;
        let radius = gap_left.min(gap_done);
        let (mut g_lo, mut g_hi) = (0u64, size_done);
        if let Some(t) = target {
            g_lo = t.saturating_sub(size_left);
            g_hi = g_hi.min(t);
        }
        if g_lo > g_hi {
            return Ok(Table { g_lo: 0, g_len: 0, e_len: 1, f_len: 1, cells: Vec::new() });
        }
        let e_len = radius as usize + 1;
        let f_len = e_len;
        let g_len = (g_hi - g_lo) as usize + 1;
        let mut cells = vec![0u128; g_len * e_len * f_len];
        for gi in 0..g_len {
            let g = g_lo + gi as u64;
            for e in 0..e_len as i64 {
                for f in 0..f_len as i64 {
                    let mut c = 0u128;
                    // v joins the agree set with either sign.
                    if g >= size {
                        c += table.get(g - size, e - gap, f) + table.get(g - size, e + gap, f);
                    }
                    // v disagrees, again with either sign.
                    c += table.get(g, e, f - gap) + table.get(g, e, f + gap);
                    cells[(gi * e_len + e as usize) * f_len + f as usize] = c;
                }
            }
        }
        table = Table { g_lo, g_len, e_len, f_len, cells };
    }
    Ok(table)
}

/// `[(xy)^{M/2} u^{(1/4+ε)M}] F(x, y, u)`.
///
/// Requires `M` even, `(1/4 + ε)M` integral and at most [`MAX_TRIPLE_N`]
/// pairs.
pub fn exact_triple_coefficient(pairs: &[DegreePair], eps: f64) -> Result<BigUint> {
    let u = crate::triple::overlap_target(pairs, eps)?;
    let table = agree_set_table(pairs, Some(2 * u))?;
    Ok(BigUint::from(table.get(2 * u, 0, 0)))
}

/// All non-zero coefficients `[(xy)^{M/2} u^j] F` keyed by `j`.
pub fn exact_triple_spectrum(pairs: &[DegreePair]) -> Result<BTreeMap<u64, BigUint>> {
    let total = total_degree(pairs);
    if total % 2 == 1 {
        return Err(SaddleError::OddTotal(total));
    }
    let table = agree_set_table(pairs, None)?;
    let mut out = BTreeMap::new();
    for g in (0..=total).step_by(2) {
        let c = table.get(g, 0, 0);
        if c > 0 {
            out.insert(g / 2, BigUint::from(c));
        }
    }
    Ok(out)
}
