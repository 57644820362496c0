//! Fluctuations of the majority weight `w_maj` under the uniform and the
//! planted model.

use ksat_bounds::expected_majority_weight;
use ksat_gen::{sample_planted_pair_with, sample_uniform_with, stream_rng};
use ksat_marginals::majority_weight;
use rayon::prelude::*;
use serde::Serialize;

use crate::stats::{mean, variance};
use crate::{ExperimentError, Meta, Result};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WmajParams {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    /// Number of equal-width histogram bins.
    pub bins: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WmajTrial {
    pub trial: usize,
    pub uniform: f64,
    pub planted: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Histogram {
    pub low: f64,
    pub high: f64,
    pub uniform: Vec<u64>,
    pub planted: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WmajSummary {
    pub uniform_mean: f64,
    pub uniform_variance: f64,
    pub planted_mean: f64,
    pub planted_variance: f64,
    /// `expected_majority_weight(k, m/n)`.
    pub predicted_mean: f64,
    pub planted_minus_uniform: f64,
    pub histogram: Histogram,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WmajReport {
    pub meta: Meta,
    pub params: WmajParams,
    pub trials: Vec<WmajTrial>,
    pub summary: WmajSummary,
}

/// Trial `i` draws the uniform formula from stream `2i` and the planted pair
/// from stream `2i + 1`.
pub fn run_wmaj_fluctuation(params: &WmajParams) -> Result<WmajReport> {
    if params.trials < 2 || params.bins == 0 {
        return Err(ExperimentError::InvalidParameters("need trials >= 2 and bins >= 1".into()));
    }
    let p = params.clone();
    let trials: Vec<WmajTrial> = (0..p.trials)
        .into_par_iter()
        .map(|i| -> Result<WmajTrial> {
            let uni = sample_uniform_with(p.n, p.m, p.k, &mut stream_rng(p.seed, 2 * i as u64))?;
            let (pl, _) = sample_planted_pair_with(p.n, p.m, p.k, &mut stream_rng(p.seed, 2 * i as u64 + 1))?;
            let w = |f: &ksat_core::Formula| -> Result<f64> {
                let r = majority_weight(&f.degree_sequence())?;
                Ok(*r.numer() as f64 / *r.denom() as f64)
            };
            Ok(WmajTrial { trial: i, uniform: w(&uni)?, planted: w(&pl)? })
        })
        .collect::<Result<_>>()?;

    let u: Vec<f64> = trials.iter().map(|t| t.uniform).collect();
    let pl: Vec<f64> = trials.iter().map(|t| t.planted).collect();
    let low = u.iter().chain(&pl).copied().fold(f64::INFINITY, f64::min);
    let high = u.iter().chain(&pl).copied().fold(f64::NEG_INFINITY, f64::max);
    let bin = |x: f64| {
        if high > low {
            (((x - low) / (high - low) * p.bins as f64) as usize).min(p.bins - 1)
        } else {
            0
        }
    };
    let mut hu = vec![0u64; p.bins];
    let mut hp = vec![0u64; p.bins];
    u.iter().for_each(|&x| hu[bin(x)] += 1);
    pl.iter().for_each(|&x| hp[bin(x)] += 1);

    let r = p.m as f64 / p.n as f64;
    let summary = WmajSummary {
        uniform_mean: mean(&u),
        uniform_variance: variance(&u),
        planted_mean: mean(&pl),
        planted_variance: variance(&pl),
        predicted_mean: expected_majority_weight(p.k, r)?,
        planted_minus_uniform: mean(&pl) - mean(&u),
        histogram: Histogram { low, high, uniform: hu, planted: hp },
    };
    Ok(WmajReport { meta: Meta::new("wmaj-fluctuation", params.seed), params: params.clone(), trials, summary })
}
