//! Random formula samplers.
//!
//! The models nest: a uniform formula is obtained by first drawing its
//! degree sequence ([`sample_degree_sequence`]) and then a uniformly random
//! formula with exactly those degrees ([`sample_formula_given_degrees`]).
//! Conditioning further on the clause-type counts gives
//! [`sample_formula_given_degrees_and_types`]. The planted model draws an
//! assignment first and then clauses it satisfies.
//!
//! Every sampler is a pure function of its parameters and a `u64` seed. The
//! `*_with` variants take an explicit RNG so that Monte Carlo drivers can hand
//! out independent streams via [`stream_rng`].

use std::collections::BTreeMap;

use ksat_core::{
    build_type_table, clause_type_counts, Assignment, ClauseTypeCounts, CoreError, Formula,
    Literal, SignedDegreeSequence, TypeCode,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(
        "clause-type counts are infeasible for this degree sequence: type {code} has {supply} \
         occurrences but {demand} slots demand it"
    )]
    InfeasibleTypes {
        code: TypeCode,
        supply: u64,
        demand: u64,
    },
    #[error("clause-type counts cover {got} clauses, the degree sequence has {expected}")]
    ClauseCountMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, GenError>;

/// RNG for stream `stream` of master seed `seed`.
///
/// Distinct streams of one seed are independent ChaCha8 keystreams, so trial
/// `i` of an experiment is reproducible on its own regardless of scheduling.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Clause count for density `r`: `m = floor(r·n + 1/2)`.
pub fn clauses_for_density(r: f64, n: usize) -> Result<usize> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(GenError::InvalidParameters(format!(
            "density must be finite and non-negative, got {r}"
        )));
    }
    Ok((r * n as f64 + 0.5).floor() as usize)
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if k < 2 || n < k {
        return Err(GenError::InvalidParameters(format!(
            "need n >= k >= 2, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// A formula whose `km` slots are i.i.d. uniform over the `2n` literals.
pub fn sample_uniform(n: usize, m: usize, k: usize, seed: u64) -> Result<Formula> {
    sample_uniform_with(n, m, k, &mut stream_rng(seed, 0))
}

pub fn sample_uniform_with<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    k: usize,
    rng: &mut R,
) -> Result<Formula> {
    check_shape(n, k)?;
    let slots = (0..m * k)
        .map(|_| Literal::from_code(rng.random_range(0..2 * n)))
        .collect();
    Ok(Formula::from_slots(n, k, slots)?)
}

/// Degrees of `2n` i.i.d. Poisson(kr/2) variables conditioned on summing to
/// `km`.
///
/// Conditioned on their sum, i.i.d. Poissons are multinomial with equal cell
/// probabilities, which we sample exactly by binomial splitting: cell `i`
/// takes `Bin(remaining, 1/(2n − i))` of the remaining tokens.
pub fn sample_degree_sequence(
    n: usize,
    m: usize,
    k: usize,
    seed: u64,
) -> Result<SignedDegreeSequence> {
    sample_degree_sequence_with(n, m, k, &mut stream_rng(seed, 0))
}

pub fn sample_degree_sequence_with<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    k: usize,
    rng: &mut R,
) -> Result<SignedDegreeSequence> {
    check_shape(n, k)?;
    let cells = 2 * n;
    let mut remaining = (k * m) as u64;
    let mut counts = Vec::with_capacity(cells);
    for i in 0..cells {
        let left = cells - i;
        let c = if left == 1 || remaining == 0 {
            if left == 1 {
                remaining
            } else {
                0
            }
        } else {
            Binomial::new(remaining, 1.0 / left as f64)
                .expect("probability in (0,1]")
                .sample(rng)
        };
        remaining -= c;
        counts.push(c);
    }
    let pairs = counts.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    Ok(SignedDegreeSequence::new(k, m, pairs)?)
}

/// A uniformly random formula with degree sequence exactly `d`.
///
/// Each literal contributes `d_l` clones; a uniform shuffle of all clones cut
/// into consecutive blocks of `k` is a uniform matching of clones to slots.
pub fn sample_formula_given_degrees(d: &SignedDegreeSequence, seed: u64) -> Result<Formula> {
    sample_formula_given_degrees_with(d, &mut stream_rng(seed, 0))
}

pub fn sample_formula_given_degrees_with<R: Rng + ?Sized>(
    d: &SignedDegreeSequence,
    rng: &mut R,
) -> Result<Formula> {
    let mut clones = clones_of(d, |_| true);
    clones.shuffle(rng);
    Ok(Formula::from_slots(d.n(), d.k(), clones)?)
}

fn clones_of(d: &SignedDegreeSequence, keep: impl Fn(Literal) -> bool) -> Vec<Literal> {
    let mut out = Vec::new();
    for (code, &deg) in d.literal_degrees().iter().enumerate() {
        let l = Literal::from_code(code);
        if keep(l) {
            out.extend(std::iter::repeat(l).take(deg as usize));
        }
    }
    out
}

/// A uniformly random formula with degree sequence `d` and clause-type counts
/// exactly `counts`.
///
/// The clause order is a uniform shuffle of the multiset of clause types;
/// then, per literal type, a shuffled pile of that type's clones is dealt to
/// the slots that demand the type.
pub fn sample_formula_given_degrees_and_types(
    d: &SignedDegreeSequence,
    counts: &ClauseTypeCounts,
    seed: u64,
) -> Result<Formula> {
    sample_formula_given_degrees_and_types_with(d, counts, &mut stream_rng(seed, 0))
}

pub fn sample_formula_given_degrees_and_types_with<R: Rng + ?Sized>(
    d: &SignedDegreeSequence,
    counts: &ClauseTypeCounts,
    rng: &mut R,
) -> Result<Formula> {
    let table = build_type_table(d)?;
    if counts.total() != d.m() {
        return Err(GenError::ClauseCountMismatch {
            got: counts.total(),
            expected: d.m(),
        });
    }
    let demand = counts.slot_demand();
    for t in table.types().into_iter().chain(demand.keys().copied()) {
        let (supply, want) = (table.mass(t), demand.get(&t).copied().unwrap_or(0));
        if supply != want {
            return Err(GenError::InfeasibleTypes {
                code: t,
                supply,
                demand: want,
            });
        }
    }
    if counts.counts.keys().any(|l| l.0.len() != d.k()) {
        return Err(GenError::InvalidParameters(
            "clause type of the wrong width".into(),
        ));
    }

    let mut piles: BTreeMap<TypeCode, Vec<Literal>> = BTreeMap::new();
    for (code, &deg) in d.literal_degrees().iter().enumerate() {
        let l = Literal::from_code(code);
        piles
            .entry(table.literal_code(l))
            .or_default()
            .extend(std::iter::repeat(l).take(deg as usize));
    }
    for pile in piles.values_mut() {
        pile.shuffle(rng);
    }

    let mut order: Vec<&ksat_core::ClauseType> = Vec::with_capacity(d.m());
    for (l, &c) in &counts.counts {
        order.extend(std::iter::repeat(l).take(c));
    }
    order.shuffle(rng);

    let mut slots = Vec::with_capacity(d.m() * d.k());
    for l in order {
        for t in &l.0 {
            let lit = piles
                .get_mut(t)
                .and_then(|p| p.pop())
                .expect("supply equals demand for every type");
            slots.push(lit);
        }
    }
    Ok(Formula::from_slots(d.n(), d.k(), slots)?)
}

/// Draws clause-type counts from their defining distribution: the counts of a
/// uniformly random formula with degree sequence `d`.
pub fn sample_type_counts(d: &SignedDegreeSequence, seed: u64) -> Result<ClauseTypeCounts> {
    let mut rng = stream_rng(seed, 0);
    let f = sample_formula_given_degrees_with(d, &mut rng)?;
    let table = build_type_table(d)?;
    Ok(clause_type_counts(&f, &table))
}

/// A planted pair: a uniform assignment and `m` clauses drawn i.i.d. uniformly
/// among the k-tuples of literals that it satisfies.
pub fn sample_planted_pair(
    n: usize,
    m: usize,
    k: usize,
    seed: u64,
) -> Result<(Formula, Assignment)> {
    sample_planted_pair_with(n, m, k, &mut stream_rng(seed, 0))
}

pub fn sample_planted_pair_with<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    k: usize,
    rng: &mut R,
) -> Result<(Formula, Assignment)> {
    if k == 0 || n == 0 {
        return Err(GenError::InvalidParameters(format!(
            "need n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    let sigma = Assignment::new((0..n).map(|_| rng.random::<bool>()).collect());
    let f = sample_planted_formula_with(&sigma, m, k, rng)?;
    Ok((f, sigma))
}

/// `m` clauses drawn uniformly among k-tuples satisfied by a fixed `sigma`.
///
/// Rejection sampling: draw k uniform literals and retry while all are false.
pub fn sample_planted_formula_with<R: Rng + ?Sized>(
    sigma: &Assignment,
    m: usize,
    k: usize,
    rng: &mut R,
) -> Result<Formula> {
    let n = sigma.len();
    if k == 0 || n == 0 {
        return Err(GenError::InvalidParameters(format!(
            "need n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    let mut slots = Vec::with_capacity(m * k);
    let mut clause = vec![Literal::positive(0); k];
    for _ in 0..m {
        loop {
            for s in clause.iter_mut() {
                *s = Literal::from_code(rng.random_range(0..2 * n));
            }
            if clause.iter().any(|&l| sigma.literal_value(l)) {
                break;
            }
        }
        slots.extend_from_slice(&clause);
    }
    Ok(Formula::from_slots(n, k, slots)?)
}
