//! Gaussian approximation of the central coefficient of
//! `∏_v (z^{d_v} + z^{d_¬v})`.

use std::f64::consts::PI;

use num_integer::Integer;
use serde::Serialize;

use crate::{total_degree, DegreePair, Result, SaddleError};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SimpleAsymptotic {
    pub n: usize,
    /// `M = Σ (d_v + d_¬v)`; the coefficient sought is that of `z^{M/2}`.
    pub total: u64,
    /// `S₂ = Σ (d_v − d_¬v)²/8`.
    pub s2: f64,
    /// `gcd{|d_v − d_¬v|}` over untied pairs (0 when every pair is tied).
    pub lattice_gcd: u64,
    /// Whether `M/2` is reachable at all; if not the coefficient is 0.
    pub on_lattice: bool,
    pub ln_value: f64,
    pub value: f64,
    /// True when the value is exact (all pairs tied) rather than asymptotic.
    pub exact: bool,
}

/// `g·2^N / (2√(π S₂))` with `g` the lattice gcd.
///
/// The sum `Σ_v X_v` with `X_v` uniform on `{d_v, d_¬v}` has variance
/// `Σ D²/4 = 2S₂` and lives on a coset of `gZ`; the value is its Gaussian
/// local approximation at `M/2` scaled by the `2^N` assignments. When every
/// pair is tied the coefficient is exactly `2^N`.
pub fn coeff_simple_asymptotic(pairs: &[DegreePair]) -> Result<SimpleAsymptotic> {
    let total = total_degree(pairs);
    if total % 2 == 1 {
        return Err(SaddleError::OddTotal(total));
    }
    let n = pairs.len();
    let gaps: Vec<u64> = pairs.iter().map(|&(a, b)| a.abs_diff(b)).collect();
    let g = gaps.iter().fold(0u64, |acc, &d| acc.gcd(&d));
    let s2: f64 = gaps.iter().map(|&d| (d * d) as f64 / 8.0).sum();
    let ln_all = n as f64 * std::f64::consts::LN_2;

    let mut out = SimpleAsymptotic {
        n,
        total,
        s2,
        lattice_gcd: g,
        on_lattice: true,
        ln_value: ln_all,
        value: 2f64.powi(n as i32),
        exact: g == 0,
    };
    if g == 0 {
        return Ok(out);
    }
    // M/2 − Σ min(d, d') = Σ|D|/2 must be a multiple of g.
    let offset: u64 = gaps.iter().sum::<u64>() / 2;
    if offset % g != 0 {
        out.on_lattice = false;
        out.ln_value = f64::NEG_INFINITY;
        out.value = 0.0;
        return Ok(out);
    }
    out.ln_value = (g as f64).ln() + ln_all - (2.0 * (PI * s2).sqrt()).ln();
    out.value = out.ln_value.exp();
    Ok(out)
}
