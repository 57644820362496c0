//! The pair exponent along overlap `x` for unconstrained pairs of
//! assignments, and a grid sweep checking that it is negative away from the
//! centre `x = 1/2`.

use serde::Serialize;

use crate::rates::entropy;
use crate::{MomentsError, Result};

/// `ln 2 + h(x) + r·ln(1 − 2^{1−k} + 2^{−k}(1−x)^k)`.
///
/// # Panics
/// If `x` is not in `(0, 1)`.
pub fn offdiag_exponent(x: f64, k: usize, r: f64) -> f64 {
    assert!(x > 0.0 && x < 1.0, "overlap {x} outside (0,1)");
    let two_k = 2f64.powi(-(k as i32));
    let inner = -2.0 * two_k + two_k * (1.0 - x).powi(k as i32);
    std::f64::consts::LN_2 + entropy(x) + r * inner.ln_1p()
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct OffdiagReport {
    pub k: usize,
    pub r: f64,
    /// Half-width `ξ = k·2^{−k/2}` of the excluded window around 1/2.
    pub xi: f64,
    /// The non-empty closed intervals that were swept.
    pub intervals: Vec<(f64, f64)>,
    pub grid_points: usize,
    /// Largest value seen, `None` when there were no grid points.
    pub max_value: Option<f64>,
    pub argmax: Option<f64>,
    /// Number of grid points with a non-negative value.
    pub violations: usize,
    pub first_violation: Option<f64>,
    pub passed: bool,
}

/// Upper end of the swept range; the exponent's entropy term is singular at 1.
pub const UPPER_END: f64 = 1.0 - 1e-6;

/// Evaluates [`offdiag_exponent`] on `grid_size` points spread over
/// `[k2^{−k}, 1/2−ξ] ∪ [1/2+ξ, 1−10^{−6}]` (endpoints included, points split
/// in proportion to interval length).
///
/// For small `k` both intervals can be empty; the sweep then passes with zero
/// grid points, which the report makes visible.
pub fn verify_offdiag(k: usize, r: f64, grid_size: usize) -> Result<OffdiagReport> {
    if k < 8 {
        return Err(MomentsError::Domain(format!("verify_offdiag needs k >= 8, got {k}")));
    }
    let xi = k as f64 * 2f64.powf(-(k as f64) / 2.0);
    let lower = k as f64 * 2f64.powi(-(k as i32));
    let intervals: Vec<(f64, f64)> = [(lower, 0.5 - xi), (0.5 + xi, UPPER_END)]
        .into_iter()
        .filter(|(a, b)| a <= b && *a > 0.0 && *b < 1.0)
        .collect();
    let total_len: f64 = intervals.iter().map(|(a, b)| b - a).sum();

    let mut report = OffdiagReport {
        k,
        r,
        xi,
        intervals: intervals.clone(),
        grid_points: 0,
        max_value: None,
        argmax: None,
        violations: 0,
        first_violation: None,
        passed: true,
    };
    for &(a, b) in &intervals {
        let share = if total_len > 0.0 { (b - a) / total_len } else { 1.0 };
        let points = ((grid_size as f64 * share).round() as usize).max(2);
        for i in 0..points {
            let x = if i + 1 == points { b } else { a + (b - a) * i as f64 / (points - 1) as f64 };
            let v = offdiag_exponent(x, k, r);
            report.grid_points += 1;
            if report.max_value.map_or(true, |m| v > m) {
                report.max_value = Some(v);
                report.argmax = Some(x);
            }
            if v >= 0.0 {
                report.violations += 1;
                report.first_violation.get_or_insert(x);
            }
        }
    }
    report.passed = report.violations == 0;
    Ok(report)
}
