//! Distance spectra of ordered pairs of satisfying assignments.
//!
//! Small solution sets are handled pair by pair. Large ones use the
//! Walsh–Hadamard transform `F` of the solution indicator: the number of
//! ordered pairs at distance `d` is `2^{−n}·Σ_w K_d(w)·B(w)` where
//! `B(w) = Σ_{|s|=w} F(s)²` and `K_d` is the Krawtchouk polynomial.

use ksat_core::Formula;

use crate::{satisfying_masks, Result};

/// Pairwise evaluation is used up to this many solutions.
const DIRECT_LIMIT: usize = 4096;
/// The transform needs `2^n` words of memory.
const WALSH_MAX_VARS: usize = 26;

/// `spectrum[d]` = number of ordered pairs `(σ, τ) ∈ S²` at Hamming distance
/// `d`, for `d = 0..=n`.
pub fn pair_distance_spectrum(formula: &Formula, cap: usize) -> Result<Vec<u128>> {
    let n = formula.n();
    let masks = satisfying_masks(formula, cap)?;
    if masks.len() <= DIRECT_LIMIT || n > WALSH_MAX_VARS {
        Ok(spectrum_direct(&masks, n))
    } else {
        Ok(spectrum_walsh(&masks, n))
    }
}

/// Pair-by-pair spectrum.
pub fn spectrum_direct(masks: &[u64], n: usize) -> Vec<u128> {
    let mut out = vec![0u128; n + 1];
    for (i, &a) in masks.iter().enumerate() {
        out[0] += 1;
        for &b in &masks[i + 1..] {
            out[(a ^ b).count_ones() as usize] += 2;
        }
    }
    out
}

/// Spectrum through the Walsh–Hadamard transform.
pub fn spectrum_walsh(masks: &[u64], n: usize) -> Vec<u128> {
    assert!(n <= WALSH_MAX_VARS);
    let size = 1usize << n;
    let mut f = vec![0i64; size];
    for &m in masks {
        f[m as usize] = 1;
    }
    let mut h = 1;
    while h < size {
        for block in (0..size).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (f[i], f[i + h]);
                f[i] = a + b;
                f[i + h] = a - b;
            }
        }
        h *= 2;
    }
    let mut by_weight = vec![0i128; n + 1];
    for (s, &v) in f.iter().enumerate() {
        by_weight[s.count_ones() as usize] += (v as i128) * (v as i128);
    }
    let binom = binomials(n);
    (0..=n)
        .map(|d| {
            let total: i128 = (0..=n)
                .map(|w| krawtchouk(d, w, n, &binom) * by_weight[w])
                .sum();
            debug_assert_eq!(total % (size as i128), 0);
            (total / size as i128) as u128
        })
        .collect()
}

fn binomials(n: usize) -> Vec<Vec<i128>> {
    let mut c = vec![vec![0i128; n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + if j < i { c[i - 1][j] } else { 0 };
        }
    }
    c
}

/// `K_d(w) = Σ_j (−1)^j·C(w, j)·C(n − w, d − j)`.
fn krawtchouk(d: usize, w: usize, n: usize, c: &[Vec<i128>]) -> i128 {
    (0..=d.min(w))
        .filter(|&j| d - j <= n - w)
        .map(|j| {
            let t = c[w][j] * c[n - w][d - j];
            if j % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_methods_agree_on_arbitrary_sets() {
        let n = 9;
        let masks: Vec<u64> = (0..1u64 << n).filter(|m| (m * 2654435761) % 7 < 3).collect();
        assert_eq!(spectrum_direct(&masks, n), spectrum_walsh(&masks, n));
    }

    #[test]
    fn full_cube_is_binomial() {
        let n = 6;
        let masks: Vec<u64> = (0..1u64 << n).collect();
        let s = spectrum_walsh(&masks, n);
        let c = binomials(n);
        for d in 0..=n {
            assert_eq!(s[d], (c[n][d] as u128) << n);
        }
    }
}
