//! Two-sample check that the two-step sampler (degrees first, then a
//! uniform configuration) reproduces the uniform model's `w_maj` law.

use ksat_gen::{sample_degree_sequence_with, sample_formula_given_degrees_with, sample_uniform_with, stream_rng};
use ksat_marginals::majority_weight;
use rayon::prelude::*;
use serde::Serialize;

use crate::stats::{ks_two_sample, KsResult};
use crate::{Meta, Result};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GeneratorKsParams {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GeneratorKsReport {
    pub meta: Meta,
    pub params: GeneratorKsParams,
    pub uniform_mean: f64,
    pub two_step_mean: f64,
    pub ks: KsResult,
}

/// Trial `i` uses stream `2i` for the uniform sample and `2i + 1` for the
/// two-step sample.
pub fn run_generator_ks(params: &GeneratorKsParams) -> Result<GeneratorKsReport> {
    let p = params.clone();
    let pairs: Vec<(f64, f64)> = (0..p.trials)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64)> {
            let uni = sample_uniform_with(p.n, p.m, p.k, &mut stream_rng(p.seed, 2 * i as u64))?;
            let mut rng = stream_rng(p.seed, 2 * i as u64 + 1);
            let d = sample_degree_sequence_with(p.n, p.m, p.k, &mut rng)?;
            let two = sample_formula_given_degrees_with(&d, &mut rng)?;
            let w = |f: &ksat_core::Formula| -> Result<f64> {
                let r = majority_weight(&f.degree_sequence())?;
                Ok(*r.numer() as f64 / *r.denom() as f64)
            };
            Ok((w(&uni)?, w(&two)?))
        })
        .collect::<Result<_>>()?;
    let (a, b): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok(GeneratorKsReport {
        meta: Meta::new("generator-ks", params.seed),
        params: params.clone(),
        uniform_mean: a.iter().sum::<f64>() / a.len() as f64,
        two_step_mean: b.iter().sum::<f64>() / b.len() as f64,
        ks: ks_two_sample(&a, &b),
    })
}
