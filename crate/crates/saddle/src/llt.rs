//! Saddle-point local limit theorem for sums of i.i.d. variables on `N_0`.

use std::f64::consts::PI;

use num_integer::Integer;
use serde::Serialize;

use crate::{Result, SaddleError};

/// A probability generating function.
#[derive(Clone, Debug, PartialEq)]
pub enum PgfSpec {
    /// `1 − p + pz`.
    Bernoulli(f64),
    /// `e^{λ(z−1)}`.
    Poisson(f64),
    /// `Σ_i p_i z^i` for the listed probabilities (normalised on use).
    Finite(Vec<f64>),
}

impl PgfSpec {
    fn validate(&self) -> Result<()> {
        match self {
            PgfSpec::Bernoulli(p) if !(*p > 0.0 && *p < 1.0) => {
                Err(SaddleError::InvalidPgf(format!("Bernoulli parameter {p} not in (0,1)")))
            }
            PgfSpec::Poisson(l) if !(*l > 0.0 && l.is_finite()) => {
                Err(SaddleError::InvalidPgf(format!("Poisson mean {l} must be positive")))
            }
            PgfSpec::Finite(p) => {
                if p.iter().any(|&x| !(x >= 0.0 && x.is_finite())) || p.iter().sum::<f64>() <= 0.0 {
                    return Err(SaddleError::InvalidPgf("weights must be non-negative with positive sum".into()));
                }
                let support: Vec<usize> = (0..p.len()).filter(|&i| p[i] > 0.0).collect();
                let span = support.windows(2).fold(0usize, |g, w| g.gcd(&(w[1] - w[0])));
                if support.len() < 2 || span != 1 {
                    return Err(SaddleError::InvalidPgf("support is periodic or a single point".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `(T_0, T_∞)`, the range of `zP′(z)/P(z)` over `z ∈ (0, ∞)`.
    fn range(&self) -> (f64, f64) {
        match self {
            PgfSpec::Bernoulli(_) => (0.0, 1.0),
            PgfSpec::Poisson(_) => (0.0, f64::INFINITY),
            PgfSpec::Finite(p) => {
                let first = p.iter().position(|&x| x > 0.0).unwrap_or(0);
                let last = p.iter().rposition(|&x| x > 0.0).unwrap_or(0);
                (first as f64, last as f64)
            }
        }
    }

    /// `(ln P(z), mean, variance)` of the distribution tilted by `z = e^s`.
    fn tilted(&self, s: f64) -> (f64, f64, f64) {
        match self {
            PgfSpec::Bernoulli(p) => {
                let a = (1.0 - p).ln();
                let b = p.ln() + s;
                let hi = a.max(b);
                let ln_p = hi + ((a - hi).exp() + (b - hi).exp()).ln();
                let m = (b - ln_p).exp();
                (ln_p, m, m * (1.0 - m))
            }
            PgfSpec::Poisson(l) => {
                let z = s.exp();
                (l * (z - 1.0), l * z, l * z)
            }
            PgfSpec::Finite(p) => {
                let total: f64 = p.iter().sum();
                let logs: Vec<(f64, f64)> = p
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| w > 0.0)
                    .map(|(i, &w)| (i as f64, (w / total).ln() + s * i as f64))
                    .collect();
                let hi = logs.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
                let (mut z0, mut z1, mut z2) = (0.0, 0.0, 0.0);
                for &(i, l) in &logs {
                    let w = (l - hi).exp();
                    z0 += w;
                    z1 += w * i;
                    z2 += w * i * i;
                }
                let m = z1 / z0;
                (hi + z0.ln(), m, z2 / z0 - m * m)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LocalLimit {
    /// Saddle point `ζ`, solving `ζP′(ζ)/P(ζ) = α`.
    pub zeta: f64,
    /// `ξ = (d²/dz²)(ln P(z) − α ln z)` at `ζ`.
    pub xi: f64,
    pub ln_value: f64,
    /// `(ζ√(2πnξ))^{−1}·(P(ζ)/ζ^α)^n`, approximating `Pr[X_1+…+X_n = αn]`.
    pub value: f64,
}

/// Evaluates the saddle-point local limit approximation. The saddle point is
/// found by bisection on `ln ζ` (the tilted mean is increasing in it).
pub fn local_limit(pgf: &PgfSpec, alpha: f64, n: u64) -> Result<LocalLimit> {
    pgf.validate()?;
    let (low, high) = pgf.range();
    if !(alpha > low && alpha < high) {
        return Err(SaddleError::AlphaOutOfRange { alpha, low, high });
    }
    let (mut a, mut b) = (-700.0f64, 700.0f64);
    if pgf.tilted(a).1 > alpha || pgf.tilted(b).1 < alpha {
        return Err(SaddleError::NoSaddle(format!("α = {alpha} not bracketed")));
    }
    // The mean at s = 0 is exact for α = E[X], so test that first.
    let s = if (pgf.tilted(0.0).1 - alpha).abs() <= 1e-15 * alpha.abs().max(1.0) {
        0.0
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if pgf.tilted(mid).1 < alpha {
                a = mid;
            } else {
                b = mid;
            }
            if b - a <= 1e-15 * (1.0 + a.abs()) {
                break;
            }
        }
        0.5 * (a + b)
    };
    let (ln_p, _, var) = pgf.tilted(s);
    let zeta = s.exp();
    let xi = var / (zeta * zeta);
    let n_f = n as f64;
    let ln_value = -s - 0.5 * (2.0 * PI * n_f * xi).ln() + n_f * (ln_p - alpha * s);
    Ok(LocalLimit { zeta, xi, ln_value, value: ln_value.exp() })
}

/// Near-mean form `(2πnσ²)^{−1/2}·e^{−δ²n/2}` for `α = μ + δσ`.
pub fn local_limit_near_mean(sigma2: f64, delta: f64, n: u64) -> f64 {
    let n_f = n as f64;
    (-delta * delta * n_f / 2.0).exp() / (2.0 * PI * n_f * sigma2).sqrt()
}
