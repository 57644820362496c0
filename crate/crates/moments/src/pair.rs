//! Second moment: the coupled tilting system for pairs of satisfying
//! assignments with prescribed per-position overlap `ω`, and the exponent
//! `P_ℓ(ω)`.
//!
//! For one clause the two assignments put the `j`-th literal in state 11, 10,
//! 01 or 00 with probabilities `q¹¹_j`, `q_j − q¹¹_j`, `q_j − q¹¹_j` and
//! `q⁰⁰_j = 1 − 2q_j + q¹¹_j`. Conditioned on both assignments satisfying the
//! clause, the marginal of each literal must match `ℓ_j` and the joint
//! true-true probability must match `ω_j`.

use serde::Serialize;

use crate::first::ln_one_minus_prod;
use crate::newton;
use crate::rates::binom_rate_unchecked;
use crate::{MomentsError, Result};

/// Largest allowed `‖ω − ℓ²‖_∞`.
pub const MAX_OMEGA_DEVIATION: f64 = 0.1;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PairMomentSolution {
    pub ell: Vec<f64>,
    pub omega: Vec<f64>,
    pub q: Vec<f64>,
    pub q11: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    /// `P_ℓ(ω)`.
    pub exponent: f64,
}

impl PairMomentSolution {
    pub fn q00(&self) -> Vec<f64> {
        self.q.iter().zip(&self.q11).map(|(q, q11)| 1.0 - 2.0 * q + q11).collect()
    }
}

/// Probability that both assignments satisfy the clause,
/// `1 − 2∏(1−q) + ∏q⁰⁰`.
fn both_satisfied(q: &[f64], q11: &[f64]) -> f64 {
    let ln_p1: f64 = q.iter().map(|&v| (-v).ln_1p()).sum();
    let ln_p2: f64 = q.iter().zip(q11).map(|(&a, &b)| (1.0 - 2.0 * a + b).ln()).sum();
    // 1 − 2Π₁ + Π₂ = (1 − Π₁) − Π₁(1 − Π₂/Π₁)
    let p1 = ln_p1.exp();
    -ln_p1.exp_m1() + p1 * (ln_p2 - ln_p1).exp_m1()
}

fn pair_residual(x: &[f64], ell: &[f64], omega: &[f64]) -> Option<Vec<f64>> {
    let k = ell.len();
    let (q, q11) = x.split_at(k);
    for j in 0..k {
        let q00 = 1.0 - 2.0 * q[j] + q11[j];
        if !(q11[j] > 0.0 && q11[j] < q[j] && q[j] < 1.0 && q00 > 0.0) {
            return None;
        }
    }
    let den = both_satisfied(q, q11);
    if !(den > 0.0) {
        return None;
    }
    // ∏_{h≠j}(1 − q_h) via prefix and suffix products.
    let mut prefix = vec![1.0; k + 1];
    for j in 0..k {
        prefix[j + 1] = prefix[j] * (1.0 - q[j]);
    }
    let mut out = Vec::with_capacity(2 * k);
    let mut suffix = 1.0;
    let mut ell_res = vec![0.0; k];
    for j in (0..k).rev() {
        let others = prefix[j] * suffix;
        ell_res[j] = (q[j] - (q[j] - q11[j]) * others) / den - ell[j];
        suffix *= 1.0 - q[j];
    }
    out.extend(ell_res);
    out.extend(q11.iter().zip(omega).map(|(&a, &w)| a / den - w));
    Some(out)
}

fn check_overlap(ell: &[f64], omega: &[f64]) -> Result<()> {
    if ell.is_empty() || ell.len() != omega.len() {
        return Err(MomentsError::InfeasibleOverlap(format!(
            "ℓ has {} entries, ω has {}",
            ell.len(),
            omega.len()
        )));
    }
    for (j, (&l, &w)) in ell.iter().zip(omega).enumerate() {
        if !(l > 0.0 && l < 1.0) {
            return Err(MomentsError::Domain(format!("ℓ_{j} = {l} outside (0,1)")));
        }
        if !(w > 0.0 && w < l && 1.0 - 2.0 * l + w > 0.0) {
            return Err(MomentsError::InfeasibleOverlap(format!(
                "ω_{j} = {w} is not a valid joint probability for ℓ_{j} = {l}"
            )));
        }
        if (w - l * l).abs() >= MAX_OMEGA_DEVIATION {
            return Err(MomentsError::InfeasibleOverlap(format!(
                "|ω_{j} − ℓ_{j}²| = {} is not below {MAX_OMEGA_DEVIATION}",
                (w - l * l).abs()
            )));
        }
    }
    Ok(())
}

/// `P_ℓ(ω)` from a solved `(q, q¹¹)`.
fn exponent_from(ell: &[f64], omega: &[f64], q: &[f64], q11: &[f64]) -> f64 {
    let mut value = both_satisfied(q, q11).ln();
    for j in 0..ell.len() {
        let q00 = 1.0 - 2.0 * q[j] + q11[j];
        let target00 = 1.0 - 2.0 * ell[j] + omega[j];
        value -= binom_rate_unchecked(q11[j], omega[j])
            + (1.0 - omega[j])
                * binom_rate_unchecked(q00 / (1.0 - q11[j]), target00 / (1.0 - omega[j]));
    }
    value
}

/// Solves for `(q, q¹¹)` by damped Newton from `(ℓ, ω)` and evaluates
/// `P_ℓ(ω)` at the solution.
pub fn solve_pair_q(ell: &[f64], omega: &[f64]) -> Result<PairMomentSolution> {
    check_overlap(ell, omega)?;
    let k = ell.len();
    let start: Vec<f64> = ell.iter().chain(omega).copied().collect();
    let solved = newton::solve(start, |x| pair_residual(x, ell, omega))?;
    let (q, q11) = solved.x.split_at(k);
    Ok(PairMomentSolution {
        ell: ell.to_vec(),
        omega: omega.to_vec(),
        q: q.to_vec(),
        q11: q11.to_vec(),
        residual: solved.residual,
        iterations: solved.iterations,
        exponent: exponent_from(ell, omega, q, q11),
    })
}

/// `P_ℓ(ω)`.
pub fn pair_exponent(ell: &[f64], omega: &[f64]) -> Result<f64> {
    Ok(solve_pair_q(ell, omega)?.exponent)
}

/// The value `2[ln(1 − ∏(1−q)) − Σ_j ψ(q_j, ℓ_j)]` that `P_ℓ` takes at
/// `ω* = ℓ²`, with `q` the first-moment tilting vector.
pub fn product_exponent(ell: &[f64]) -> Result<f64> {
    let sol = crate::first::solve_first_moment_q(ell)?;
    Ok(2.0 * (ln_one_minus_prod(&sol.q) - sol.ln_balance))
}

/// Central-difference gradient of `P_ℓ` in `ω`.
pub fn pair_gradient(ell: &[f64], omega: &[f64], step: f64) -> Result<Vec<f64>> {
    let mut probe = omega.to_vec();
    let mut grad = Vec::with_capacity(omega.len());
    for j in 0..omega.len() {
        probe[j] = omega[j] + step;
        let plus = pair_exponent(ell, &probe)?;
        probe[j] = omega[j] - step;
        let minus = pair_exponent(ell, &probe)?;
        probe[j] = omega[j];
        grad.push((plus - minus) / (2.0 * step));
    }
    Ok(grad)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct HessianReport {
    pub k: usize,
    pub step: f64,
    /// Second central differences of `P_ℓ` at `ω* = ℓ²`.
    pub matrix: Vec<Vec<f64>>,
    pub max_abs: f64,
    /// Max-norm of the central-difference gradient at `ω*` with the same step.
    pub gradient_max_abs: f64,
    /// `k^6 · 4^{−k}`.
    pub bound: f64,
    pub within_bound: bool,
}

/// Finite-difference Hessian of `P_ℓ` at `ω* = ℓ²`, compared against
/// `k^6·4^{−k}`.
pub fn check_hessian_bound(ell: &[f64], step: f64) -> Result<HessianReport> {
    let k = ell.len();
    let centre: Vec<f64> = ell.iter().map(|l| l * l).collect();
    let at = |di: Option<(usize, f64)>, dj: Option<(usize, f64)>| -> Result<f64> {
        let mut w = centre.clone();
        for (i, d) in [di, dj].into_iter().flatten() {
            w[i] += d;
        }
        pair_exponent(ell, &w)
    };
    let p0 = at(None, None)?;
    let mut matrix = vec![vec![0.0; k]; k];
    let mut gradient_max_abs = 0f64;
    for i in 0..k {
        let plus = at(Some((i, step)), None)?;
        let minus = at(Some((i, -step)), None)?;
        matrix[i][i] = (plus - 2.0 * p0 + minus) / (step * step);
        gradient_max_abs = gradient_max_abs.max(((plus - minus) / (2.0 * step)).abs());
        for j in 0..i {
            let pp = at(Some((i, step)), Some((j, step)))?;
            let pm = at(Some((i, step)), Some((j, -step)))?;
            let mp = at(Some((i, -step)), Some((j, step)))?;
            let mm = at(Some((i, -step)), Some((j, -step)))?;
            let v = (pp - pm - mp + mm) / (4.0 * step * step);
            matrix[i][j] = v;
            matrix[j][i] = v;
        }
    }
    let max_abs = matrix.iter().flatten().fold(0f64, |a, &b| a.max(b.abs()));
    let bound = (k as f64).powi(6) * 4f64.powi(-(k as i32));
    Ok(HessianReport {
        k,
        step,
        matrix,
        max_abs,
        gradient_max_abs,
        bound,
        within_bound: max_abs <= bound,
    })
}
