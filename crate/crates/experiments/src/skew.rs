//! Average distance of satisfying assignments from the majority vote.

use ksat_census::{census, Census};
use ksat_core::Formula;
use ksat_gen::{sample_uniform_with, stream_rng};
use serde::Serialize;

use crate::runner::collect_in_order;
use crate::{ExperimentError, Meta, Result};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SkewParams {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    /// Number of satisfiable instances to collect.
    pub trials: usize,
    pub seed: u64,
    pub cap: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SkewTrial {
    /// Attempt index; the instance is drawn from stream `attempt` of the seed.
    pub attempt: usize,
    pub solutions: u64,
    /// `Σ_σ dist(σ, σ_MAJ)/(|S|·n)` as a reduced fraction `[num, den]`.
    pub skew_exact: [u64; 2],
    pub skew: f64,
    /// Whether every tied variable has marginal exactly 1/2, the condition
    /// under which the literal-negated formula must give the same skew.
    pub tie_neutral: bool,
    /// Skew of the literal-negated formula, computed for tie-neutral trials.
    pub mirrored_skew: Option<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SkewSummary {
    pub satisfiable: usize,
    pub discarded_unsatisfiable: usize,
    pub below_half: usize,
    pub fraction_below_half: f64,
    pub mean_skew: f64,
    /// `1/2 − mean skew`.
    pub delta_hat: f64,
    pub mirror_checked: usize,
    pub mirror_mismatches: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SkewReport {
    pub meta: Meta,
    pub params: SkewParams,
    pub trials: Vec<SkewTrial>,
    pub summary: SkewSummary,
}

fn tie_neutral(formula: &Formula, c: &Census) -> bool {
    formula
        .degree_sequence()
        .pairs()
        .iter()
        .zip(&c.true_counts)
        .all(|(&(p, q), &t)| p != q || 2 * t == c.count)
}

/// Draws uniform formulas until `trials` satisfiable ones are found and
/// records, for each, the exact mean normalised distance to `σ_MAJ`.
pub fn run_majority_skew(params: &SkewParams) -> Result<SkewReport> {
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
        let exact = c.mean_distance_to_majority()?;
        let neutral = tie_neutral(&f, &c);
        let mirrored_skew = if neutral {
            let r = census(&f.mirrored(), p.cap)?.mean_distance_to_majority()?;
            Some(*r.numer() as f64 / *r.denom() as f64)
        } else {
            None
        };
        Ok(Some(SkewTrial {
            attempt: a,
            solutions: c.count,
            skew_exact: [*exact.numer(), *exact.denom()],
            skew: *exact.numer() as f64 / *exact.denom() as f64,
            tie_neutral: neutral,
            mirrored_skew,
        }))
    })?;
    let trials: Vec<SkewTrial> = kept.into_iter().map(|(_, t)| t).collect();

    let below_half = trials.iter().filter(|t| 2 * t.skew_exact[0] < t.skew_exact[1]).count();
    let mean_skew = trials.iter().map(|t| t.skew).sum::<f64>() / trials.len().max(1) as f64;
    let mirror_checked = trials.iter().filter(|t| t.mirrored_skew.is_some()).count();
    let mirror_mismatches =
        trials.iter().filter(|t| t.mirrored_skew.is_some_and(|m| m != t.skew)).count();
    let summary = SkewSummary {
        satisfiable: trials.len(),
        discarded_unsatisfiable: attempts - trials.len(),
        below_half,
        fraction_below_half: below_half as f64 / trials.len().max(1) as f64,
        mean_skew,
        delta_hat: 0.5 - mean_skew,
        mirror_checked,
        mirror_mismatches,
    };
    Ok(SkewReport { meta: Meta::new("majority-skew", params.seed), params: params.clone(), trials, summary })
}
