//! Saddle-point approximation of the pair-overlap coefficient
//! `[(xy)^{M/2} u^{(1/4+ε)M}] F(x, y, u)`.
//!
//! On the circles `|x| = |y| = ρ`, `|u| = ρ^{−2}` each factor of `F` becomes a
//! tilted four-point distribution on `Z^3`: both-true `(d, d, d)` and
//! both-false `(d', d', d')` with weight 1, and the two disagreeing outcomes
//! `(d, d', 0)`, `(d', d, 0)` with weight `ρ^{d+d'}`. The coefficient is
//! `E·Pr[Σ = target]` under the tilted measure, where `E` is the value of the
//! integrand at the saddle, and the probability is approximated by the
//! lattice local limit theorem.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix3, Vector3};
use serde::Serialize;

use crate::lattice::IntLattice;
use crate::{total_degree, DegreePair, Result, SaddleError};

fn check_eps(eps: f64) -> Result<()> {
    if eps > -0.25 && eps < 0.25 {
        Ok(())
    } else {
        Err(SaddleError::EpsilonOutOfRange(eps))
    }
}

/// The integer overlap target `(1/4 + ε)·M`; errors if `M` is odd or the
/// target is not integral.
pub fn overlap_target(pairs: &[DegreePair], eps: f64) -> Result<u64> {
    check_eps(eps)?;
    let total = total_degree(pairs);
    if total % 2 == 1 {
        return Err(SaddleError::OddTotal(total));
    }
    let t = (0.25 + eps) * total as f64;
    let r = t.round();
    if (t - r).abs() > 1e-9 * t.abs().max(1.0) {
        return Err(SaddleError::NonIntegralTarget(t));
    }
    Ok(r as u64)
}

/// Right side of the saddle equation minus the target, `Σ g/(2 + 2ρ^g) − (1/4+ε)M`,
/// and its derivative in `ln ρ`.
fn rho_equation(sizes: &[u64], ln_rho: f64, target: f64) -> (f64, f64) {
    let mut value = -target;
    let mut deriv = 0.0;
    for &g in sizes {
        let g = g as f64;
        let t = g * ln_rho;
        // 1/(2 + 2e^t) computed without overflow.
        let s = if t > 0.0 { (-t).exp() / (2.0 * (1.0 + (-t).exp())) } else { 1.0 / (2.0 * (1.0 + t.exp())) };
        value += g * s;
        // d/dt 1/(2 + 2e^t) = −s(1 − 2s), and t = g·ln ρ.
        deriv -= g * g * s * (1.0 - 2.0 * s);
    }
    (value, deriv)
}

/// Solves `(1/4 + ε)M = Σ_v g_v/(2 + 2ρ^{g_v})` with `g_v = d_v + d_¬v`:
/// bisection on `ln ρ` over `[2^{−20}, 2^{20}]`, then Newton. The residual is
/// at most `1e−12·M`.
pub fn solve_rho(pairs: &[DegreePair], eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let total = total_degree(pairs);
    if total == 0 {
        return Err(SaddleError::NoMass);
    }
    if eps == 0.0 {
        return Ok(1.0);
    }
    let sizes: Vec<u64> = pairs.iter().map(|&(a, b)| a + b).filter(|&g| g > 0).collect();
    let target = (0.25 + eps) * total as f64;
    let tol = 1e-12 * total as f64;
    let (mut a, mut b) = (-20.0 * std::f64::consts::LN_2, 20.0 * std::f64::consts::LN_2);
    if rho_equation(&sizes, a, target).0 < 0.0 || rho_equation(&sizes, b, target).0 > 0.0 {
        return Err(SaddleError::NoSaddle(format!("ρ outside [2^-20, 2^20] for ε = {eps}")));
    }
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if rho_equation(&sizes, mid, target).0 > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..50 {
        let (f, df) = rho_equation(&sizes, x, target);
        if f.abs() <= tol * 1e-3 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        if !(next > a - 1.0 && next < b + 1.0) {
            break;
        }
        x = next;
    }
    let (f, _) = rho_equation(&sizes, x, target);
    if f.abs() > tol {
        return Err(SaddleError::NoSaddle(format!("residual {f:e} after Newton")));
    }
    Ok(x.exp())
}

/// `ln E` with `E = ρ^{−(1−4ε)M/2} ∏_v (2 + 2ρ^{g_v})`.
pub fn triple_exponential(pairs: &[DegreePair], eps: f64, rho: f64) -> f64 {
    let total = total_degree(pairs) as f64;
    let ln_rho = rho.ln();
    let mut ln_e = -(1.0 - 4.0 * eps) * total / 2.0 * ln_rho;
    for &(a, b) in pairs {
        let t = (a + b) as f64 * ln_rho;
        // ln(2 + 2e^t) = ln 2 + softplus(t)
        let softplus = if t > 0.0 { t + (-t).exp().ln_1p() } else { t.exp().ln_1p() };
        ln_e += std::f64::consts::LN_2 + softplus;
    }
    ln_e
}

/// The quadratic form of `ln(H/E)` around the saddle, in the angles
/// `(θ, φ, ψ)` of `(x, y, u)`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct QuadraticForm {
    pub s_theta_theta: f64,
    pub s_psi_psi: f64,
    pub s_theta_phi: f64,
    pub s_theta_psi: f64,
    pub s3: f64,
}

impl QuadraticForm {
    pub fn new(pairs: &[DegreePair], rho: f64) -> Self {
        let mut q = QuadraticForm { s_theta_theta: 0.0, s_psi_psi: 0.0, s_theta_phi: 0.0, s_theta_psi: 0.0, s3: 0.0 };
        for &(a, b) in pairs {
            let (a, b) = (a as f64, b as f64);
            let d2 = (a - b) * (a - b);
            let w = rho.powf(a + b);
            q.s_theta_theta += d2 / 8.0;
            q.s_psi_psi += (d2 + 2.0 * w * (a * a + b * b)) / (2.0 * (2.0 + 2.0 * w).powi(2));
            q.s_theta_phi += d2 * (w - 1.0) / (4.0 + 4.0 * w);
            q.s_theta_psi += d2 / (4.0 + 4.0 * w);
            q.s3 += (a + b).powi(3);
        }
        q
    }

    /// `4S_θθ² − S_θφ²`.
    pub fn first_discriminant(&self) -> f64 {
        4.0 * self.s_theta_theta.powi(2) - self.s_theta_phi.powi(2)
    }

    /// `2S_ψψS_θθ − S_θψ² − S_ψψS_θφ`.
    pub fn second_discriminant(&self) -> f64 {
        2.0 * self.s_psi_psi * self.s_theta_theta
            - self.s_theta_psi.powi(2)
            - self.s_psi_psi * self.s_theta_phi
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TripleAsymptotic {
    pub n: usize,
    pub total: u64,
    pub overlap: u64,
    pub rho: f64,
    /// `ln E`.
    pub ln_e: f64,
    /// Dimension of the lattice the tilted sum lives on.
    pub rank: usize,
    pub on_lattice: bool,
    /// Determinant of the tilted covariance in lattice coordinates.
    pub lattice_cov_det: f64,
    pub ln_value: f64,
    pub value: f64,
    pub form: QuadraticForm,
}

/// Saddle-point approximation `E / ((2π)^{r/2} √det Σ_L)` of
/// `[(xy)^{M/2} u^{(1/4+ε)M}] F`, where `Σ_L` is the covariance of the tilted
/// sum expressed in a basis of the lattice spanned by the per-pair outcome
/// differences and `r` is that lattice's rank. Off the reachable coset the
/// value is 0.
pub fn coeff_triple_asymptotic(pairs: &[DegreePair], eps: f64) -> Result<TripleAsymptotic> {
    let overlap = overlap_target(pairs, eps)?;
    let total = total_degree(pairs);
    let rho = solve_rho(pairs, eps)?;
    let ln_e = triple_exponential(pairs, eps, rho);
    let ln_rho = rho.ln();

    let mut lattice = IntLattice::new();
    let mut cov = Matrix3::<f64>::zeros();
    let mut base = [0i128; 3];
    for &(a, b) in pairs {
        let (ai, bi) = (a as i128, b as i128);
        let both_false = [bi, bi, bi];
        let outcomes = [[ai, ai, ai], [ai, bi, 0], [bi, ai, 0]];
        for o in outcomes {
            lattice.insert([o[0] - both_false[0], o[1] - both_false[1], o[2] - both_false[2]]);
        }
        for i in 0..3 {
            base[i] += both_false[i];
        }

        let t = (a + b) as f64 * ln_rho;
        // Probability of each agreeing outcome: 1/(2 + 2e^t).
        let p_agree = if t > 0.0 { (-t).exp() / (2.0 * (1.0 + (-t).exp())) } else { 1.0 / (2.0 * (1.0 + t.exp())) };
        let p_dis = 0.5 - p_agree;
        let (af, bf) = (a as f64, b as f64);
        let support = [
            (Vector3::new(af, af, af), p_agree),
            (Vector3::new(bf, bf, bf), p_agree),
            (Vector3::new(af, bf, 0.0), p_dis),
            (Vector3::new(bf, af, 0.0), p_dis),
        ];
        let mean: Vector3<f64> = support.iter().map(|(v, p)| v * *p).sum();
        for (v, p) in &support {
            let c = v - mean;
            cov += c * c.transpose() * *p;
        }
    }

    let half = (total / 2) as i128;
    let target = [half - base[0], half - base[1], overlap as i128 - base[2]];
    let on_lattice = lattice.contains(target);
    let rank = lattice.rank();
    let form = QuadraticForm::new(pairs, rho);

    let mut out = TripleAsymptotic {
        n: pairs.len(),
        total,
        overlap,
        rho,
        ln_e,
        rank,
        on_lattice,
        lattice_cov_det: 0.0,
        ln_value: ln_e,
        value: ln_e.exp(),
        form,
    };
    if rank == 0 {
        // Every outcome coincides: the sum is deterministic.
        if !on_lattice {
            out.ln_value = f64::NEG_INFINITY;
            out.value = 0.0;
        }
        return Ok(out);
    }
    let basis = lattice.basis();
    let b = DMatrix::from_fn(rank, 3, |i, j| basis[i][j] as f64);
    let cov_d = DMatrix::from_fn(3, 3, |i, j| cov[(i, j)]);
    let gram = &b * b.transpose();
    let gram_inv = gram
        .try_inverse()
        .ok_or_else(|| SaddleError::NoSaddle("singular lattice basis".into()))?;
    let cov_lat = &gram_inv * &b * cov_d * b.transpose() * &gram_inv;
    let det = cov_lat.determinant();
    out.lattice_cov_det = det;
    if !on_lattice {
        out.ln_value = f64::NEG_INFINITY;
        out.value = 0.0;
        return Ok(out);
    }
    if !(det > 0.0) {
        return Err(SaddleError::NoSaddle(format!("degenerate tilted covariance (det {det:e})")));
    }
    out.ln_value = ln_e - rank as f64 / 2.0 * (2.0 * PI).ln() - 0.5 * det.ln();
    out.value = out.ln_value.exp();
    Ok(out)
}
