//! Regression of enumerated marginals on the literal imbalance `d_x − d_¬x`.

use ksat_census::census;
use ksat_gen::{sample_uniform_with, stream_rng};
use serde::Serialize;

use crate::runner::collect_in_order;
use crate::stats::{mean, ols_slope, pearson, variance};
use crate::{ExperimentError, Meta, Result};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CorrelationParams {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub cap: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CorrelationTrial {
    pub attempt: usize,
    pub solutions: u64,
    /// `d_x − d_¬x` per variable.
    pub imbalance: Vec<i64>,
    /// Enumerated `μ(x)` per variable.
    pub marginals: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CorrelationSummary {
    pub satisfiable: usize,
    pub discarded_unsatisfiable: usize,
    pub points: usize,
    /// Pooled Pearson correlation of `μ(x) − 1/2` with `d_x − d_¬x`.
    pub pearson: f64,
    pub slope: f64,
    /// The leading-order prediction `2^{−(k+1)}`.
    pub conjectured_slope: f64,
    /// Variables with `d_x = d_¬x`.
    pub tied_points: usize,
    pub tied_mean: f64,
    pub tied_std_error: f64,
    /// `|tied_mean − 1/2| ≤ 3·tied_std_error`.
    pub tied_within_3se: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CorrelationReport {
    pub meta: Meta,
    pub params: CorrelationParams,
    pub trials: Vec<CorrelationTrial>,
    pub summary: CorrelationSummary,
}

pub fn run_marginal_correlation(params: &CorrelationParams) -> Result<CorrelationReport> {
    if params.n > params.cap {
        return Err(ExperimentError::InvalidParameters(format!(
            "n = {} exceeds the enumeration cap {}",
            params.n, params.cap
        )));
    }
    let p = params.clone();
    let (kept, attempts) = collect_in_order(p.trials, p.trials.saturating_mul(100).max(1000), |a| {
        let mut rng = stream_rng(p.seed, a as u64);
        let f = sample_uniform_with(p.n, p.m, p.k, &mut rng)?;
        let c = census(&f, p.cap)?;
        if c.count == 0 {
            return Ok(None);
        }
        let imbalance = f.degree_sequence().pairs().iter().map(|&(x, y)| x as i64 - y as i64).collect();
        Ok(Some(CorrelationTrial { attempt: a, solutions: c.count, imbalance, marginals: c.marginals()? }))
    })?;
    let trials: Vec<CorrelationTrial> = kept.into_iter().map(|(_, t)| t).collect();

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut tied = Vec::new();
    for t in &trials {
        for (&d, &mu) in t.imbalance.iter().zip(&t.marginals) {
            xs.push(d as f64);
            ys.push(mu - 0.5);
            if d == 0 {
                tied.push(mu);
            }
        }
    }
    let tied_mean = if tied.is_empty() { f64::NAN } else { mean(&tied) };
    let tied_std_error =
        if tied.len() < 2 { f64::NAN } else { (variance(&tied) / tied.len() as f64).sqrt() };
    let summary = CorrelationSummary {
        satisfiable: trials.len(),
        discarded_unsatisfiable: attempts - trials.len(),
        points: xs.len(),
        pearson: pearson(&xs, &ys).unwrap_or(f64::NAN),
        slope: ols_slope(&xs, &ys).unwrap_or(f64::NAN),
        conjectured_slope: 2f64.powi(-(params.k as i32 + 1)),
        tied_points: tied.len(),
        tied_mean,
        tied_std_error,
        tied_within_3se: (tied_mean - 0.5).abs() <= 3.0 * tied_std_error,
    };
    Ok(CorrelationReport {
        meta: Meta::new("marginal-correlation", params.seed),
        params: params.clone(),
        trials,
        summary,
    })
}
