//! Closed-form threshold bounds for random k-SAT.
//!
//! All three bounds have the shape `2^k·ln2 − c(k)`; the `o_k(1)` corrections
//! that accompany them are unknown in closed form and are dropped. Every
//! result carries a caveat string saying so, so that downstream reports never
//! present the values as exact thresholds.

use std::f64::consts::LN_2;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("threshold bounds need k >= 3, got {0}")]
    WidthTooSmall(usize),
    #[error("k*r must be positive, got {0}")]
    NonPositiveDensity(f64),
}

/// Caveat attached to every bounds result.
pub const DROPPED_TERMS: &str =
    "o_k(1) corrections dropped; r_bp omits its epsilon_k = O(1/k) slack";

/// The three density bounds for clause width `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdBounds {
    pub k: usize,
    /// First-moment upper bound `2^k ln2 − (1+ln2)/2`.
    pub r_upper: f64,
    /// Balanced-assignment lower bound `2^k ln2 − k·ln2/2 − (1 + ln2/2)`.
    pub r_bal: f64,
    /// Lower bound from BP-marginal assignments, `2^k ln2 − (3/2)·ln2`.
    pub r_bp: f64,
    /// Slacks `2^k ln2 − r` of the three bounds, which do not suffer the
    /// rounding of the large common term.
    pub slack_upper: f64,
    pub slack_bal: f64,
    pub slack_bp: f64,
    pub caveat: &'static str,
}

impl ThresholdBounds {
    /// `r_upper − r_bp`, evaluated on the slacks.
    pub fn gap_upper_bp(&self) -> f64 {
        self.slack_bp - self.slack_upper
    }

    /// `r_bp − r_bal`, evaluated on the slacks.
    pub fn gap_bp_bal(&self) -> f64 {
        self.slack_bal - self.slack_bp
    }
}

fn two_k_ln2(k: usize) -> f64 {
    (2.0f64).powi(k as i32) * LN_2
}

pub fn threshold_bounds(k: usize) -> Result<ThresholdBounds, BoundsError> {
    if k < 3 {
        return Err(BoundsError::WidthTooSmall(k));
    }
    let base = two_k_ln2(k);
    let slack_upper = (1.0 + LN_2) / 2.0;
    let slack_bal = k as f64 * LN_2 / 2.0 + (1.0 + LN_2 / 2.0);
    let slack_bp = 1.5 * LN_2;
    Ok(ThresholdBounds {
        k,
        r_upper: base - slack_upper,
        r_bal: base - slack_bal,
        r_bp: base - slack_bp,
        slack_upper,
        slack_bal,
        slack_bp,
        caveat: DROPPED_TERMS,
    })
}

/// `r_bp(k) = 2^k ln2 − (3/2) ln2`, without the range check.
pub fn r_bp(k: usize) -> f64 {
    two_k_ln2(k) - 1.5 * LN_2
}

/// Density for a given slack: `r = 2^k ln2 − ρ`.
pub fn density_from_rho(k: usize, rho: f64) -> f64 {
    two_k_ln2(k) - rho
}

/// Slack below `2^k ln2`: `ρ = 2^k ln2 − r`.
pub fn rho_from_density(k: usize, r: f64) -> f64 {
    two_k_ln2(k) - r
}

/// Leading-order expectation of the majority weight of a uniform formula.
///
/// Each variable's total degree is about `kr` and `E|d_x − d_¬x| ≈ √(2kr/π)`,
/// so `w_maj = 1/2 + E|d_x − d_¬x|/(2kr) ≈ 1/2 + 1/√(2πkr)`. The `O(1/kr)`
/// remainder is dropped.
pub fn expected_majority_weight(k: usize, r: f64) -> Result<f64, BoundsError> {
    let kr = k as f64 * r;
    if !(kr > 0.0) {
        return Err(BoundsError::NonPositiveDensity(kr));
    }
    Ok(0.5 + 1.0 / (2.0 * std::f64::consts::PI * kr).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k10_values() {
        let b = threshold_bounds(10).unwrap();
        assert!((b.r_upper - 708.9360).abs() < 1e-3);
        assert!((b.r_bal - 704.9703).abs() < 1e-3);
        assert!((b.r_bp - 708.7429).abs() < 1e-3);
    }

    #[test]
    fn gap_and_ordering() {
        for k in 3..=40 {
            let b = threshold_bounds(k).unwrap();
            let gap = b.r_upper - b.r_bp;
            // The subtraction cancels 2^k ln2, so allow for its rounding.
            let ulp = two_k_ln2(k) * f64::EPSILON;
            assert!((gap - (LN_2 - 0.5)).abs() <= 1e-12 + 2.0 * ulp, "k={k}");
            assert!((b.gap_upper_bp() - (LN_2 - 0.5)).abs() <= 1e-12, "k={k}");
            assert!((b.gap_bp_bal() - ((k as f64 - 2.0) * LN_2 / 2.0 + 1.0)).abs() <= 1e-12);
            assert!(b.r_bal < b.r_bp && b.r_bp < b.r_upper, "k={k}");
            let diff = b.r_bp - b.r_bal;
            assert!(
                (diff - ((k as f64 - 2.0) * LN_2 / 2.0 + 1.0)).abs() < 1e-9 + 4.0 * ulp,
                "k={k}"
            );
        }
    }

    #[test]
    fn rho_round_trip() {
        let r = density_from_rho(12, 1.5 * LN_2);
        assert_eq!(r, r_bp(12));
        assert!((rho_from_density(12, r) - 1.5 * LN_2).abs() < 1e-9);
    }

    #[test]
    fn small_k_rejected() {
        assert_eq!(threshold_bounds(2), Err(BoundsError::WidthTooSmall(2)));
    }

    #[test]
    fn majority_weight_shape() {
        let w = expected_majority_weight(3, 3.0).unwrap();
        assert!((w - (0.5 + 1.0 / (18.0 * std::f64::consts::PI).sqrt())).abs() < 1e-15);
        let mut prev = 1.0;
        for i in 1..200 {
            let v = expected_majority_weight(3, i as f64 * 0.5).unwrap();
            assert!(v < prev && v > 0.5);
            prev = v;
        }
        assert!(expected_majority_weight(5, 1e9).unwrap() - 0.5 < 1e-4);
        assert!(expected_majority_weight(3, 0.0).is_err());
    }
}
