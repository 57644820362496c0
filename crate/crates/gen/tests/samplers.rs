use std::collections::BTreeMap;

use ksat_core::{build_type_table, clause_type_counts, Assignment, ClauseType, Literal, TypeCode};
use ksat_gen::*;
use rand_distr::{Distribution, Poisson};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn uniform_slot_frequency_matches_one_over_2n() {
    let (n, m, k) = (50, 100, 3);
    let trials = 100_000u64;
    let mut rng = stream_rng(2024, 0);
    let target = Literal::positive(0);
    let mut hits = 0u64;
    for _ in 0..trials {
        let f = sample_uniform_with(n, m, k, &mut rng).unwrap();
        if f.slots()[0] == target {
            hits += 1;
        }
    }
    let p = 1.0 / (2 * n) as f64;
    let sd = (p * (1.0 - p) / trials as f64).sqrt();
    let est = hits as f64 / trials as f64;
    assert!((est - p).abs() < 3.0 * sd, "est={est}, p={p}, sd={sd}");
}

#[test]
fn degree_sequences_have_exact_total_and_poisson_mean() {
    for seed in 0..50 {
        let d = sample_degree_sequence(40, 97, 3, seed).unwrap();
        assert_eq!(d.pairs().iter().map(|&(a, b)| a + b).sum::<u64>(), 291);
    }
    let (n, k) = (10_000usize, 3usize);
    let m = clauses_for_density(3.0, n).unwrap();
    let d = sample_degree_sequence(n, m, k, 77).unwrap();
    let xs: Vec<f64> = d.pairs().iter().map(|p| p.0 as f64).collect();
    let mean = xs.iter().sum::<f64>() / n as f64;
    // Poisson(4.5) standard error of the mean.
    let se = (4.5f64 / n as f64).sqrt();
    assert!((mean - 4.5).abs() < 3.0 * se, "mean={mean}");
}

#[test]
fn imbalance_second_moment_is_one() {
    let (n, k) = (100_000usize, 5usize);
    let m = clauses_for_density(10.0, n).unwrap();
    let d = sample_degree_sequence(n, m, k, 5).unwrap();
    let s: f64 = (0..n).map(|x| (d.imbalance(x) as f64).powi(2)).sum();
    let v = s / d.km() as f64;
    assert!((v - 1.0).abs() < 0.05, "v={v}");
}

/// Chi-square homogeneity test between two samples of category labels,
/// pooling categories with fewer than 10 combined observations.
fn homogeneity_p_value(a: &[u64], b: &[u64]) -> f64 {
    let mut table: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    for &x in a {
        table.entry(x).or_default().0 += 1.0;
    }
    for &x in b {
        table.entry(x).or_default().1 += 1.0;
    }
    let mut cells = Vec::new();
    let mut pooled = (0.0, 0.0);
    for (_, (x, y)) in table {
        if x + y < 10.0 {
            pooled.0 += x;
            pooled.1 += y;
        } else {
            cells.push((x, y));
        }
    }
    if pooled.0 + pooled.1 > 0.0 {
        cells.push(pooled);
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mut stat = 0.0;
    for &(x, y) in &cells {
        let tot = x + y;
        let ea = tot * na / (na + nb);
        let eb = tot * nb / (na + nb);
        stat += (x - ea).powi(2) / ea + (y - eb).powi(2) / eb;
    }
    let dof = (cells.len() - 1) as f64;
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}

#[test]
fn conditional_poisson_matches_rejection_sampling() {
    // n = 3 variables, k = 2, m = 6: km = 12 tokens over 6 literals, each
    // Poisson with mean kr/2 = 2 before conditioning.
    let (n, m, k) = (3usize, 6usize, 2usize);
    let trials = 20_000;
    let mut rng = stream_rng(99, 1);
    let code = |d: &[u64]| d[0] + 13 * d[1] + 169 * d[3];
    let mut fast = Vec::with_capacity(trials);
    for _ in 0..trials {
        let d = sample_degree_sequence_with(n, m, k, &mut rng).unwrap();
        fast.push(code(&d.literal_degrees()));
    }
    let pois = Poisson::new(2.0).unwrap();
    let mut slow = Vec::with_capacity(trials);
    while slow.len() < trials {
        let d: Vec<u64> = (0..2 * n).map(|_| pois.sample(&mut rng) as u64).collect();
        if d.iter().sum::<u64>() == (k * m) as u64 {
            slow.push(code(&d));
        }
    }
    let p = homogeneity_p_value(&fast, &slow);
    assert!(p > 0.01, "p={p}");
}

#[test]
fn given_degrees_reproduces_the_sequence() {
    for seed in 0..200 {
        let d = sample_degree_sequence(12, 30, 3, seed).unwrap();
        let f = sample_formula_given_degrees(&d, seed + 1000).unwrap();
        assert_eq!(f.degree_sequence(), d);
    }
}

#[test]
fn given_degrees_is_uniform_on_a_tiny_case() {
    // d_x = 2, d_¬x = 1, k = 3, m = 1: three equally likely slot orders.
    let d = ksat_core::SignedDegreeSequence::new(3, 1, vec![(2, 1)]).unwrap();
    let mut counts = [0u32; 3];
    let trials = 30_000;
    let mut rng = stream_rng(1, 0);
    for _ in 0..trials {
        let f = sample_formula_given_degrees_with(&d, &mut rng).unwrap();
        let pos = f.slots().iter().position(|l| !l.is_positive()).unwrap();
        counts[pos] += 1;
    }
    let p = 1.0 / 3.0;
    let sd = (p * (1.0 - p) / trials as f64).sqrt();
    for c in counts {
        assert!((c as f64 / trials as f64 - p).abs() < 4.0 * sd, "{counts:?}");
    }
}

#[test]
fn typed_sampler_hits_counts_exactly() {
    for seed in 0..100 {
        let d = sample_degree_sequence(15, 40, 3, seed).unwrap();
        let table = build_type_table(&d).unwrap();
        let counts = sample_type_counts(&d, seed ^ 0xabc).unwrap();
        let demand = counts.slot_demand();
        for t in table.types() {
            assert_eq!(demand.get(&t).copied().unwrap_or(0), table.mass(t));
        }
        let f = sample_formula_given_degrees_and_types(&d, &counts, seed).unwrap();
        assert_eq!(f.degree_sequence(), d);
        assert_eq!(clause_type_counts(&f, &table), counts);
    }
}

#[test]
fn typed_sampler_with_single_type_matches_degree_sampler() {
    // Balanced single variable, k = 2, m = 1: (x ∨ ¬x) or (¬x ∨ x).
    let d = ksat_core::SignedDegreeSequence::new(2, 1, vec![(1, 1)]).unwrap();
    let table = build_type_table(&d).unwrap();
    assert_eq!(table.types(), vec![TypeCode::HALF]);
    let mut counts = ksat_core::ClauseTypeCounts::default();
    counts.counts.insert(ClauseType(vec![TypeCode::HALF; 2]), 1);
    let trials = 20_000;
    let mut rng = stream_rng(3, 0);
    let (mut a, mut b) = (0u32, 0u32);
    for _ in 0..trials {
        let f = sample_formula_given_degrees_and_types_with(&d, &counts, &mut rng).unwrap();
        if f.slots()[0].is_positive() {
            a += 1;
        }
        let g = sample_formula_given_degrees_with(&d, &mut rng).unwrap();
        if g.slots()[0].is_positive() {
            b += 1;
        }
    }
    let sd = (0.25 / trials as f64).sqrt();
    assert!((a as f64 / trials as f64 - 0.5).abs() < 4.0 * sd);
    assert!((b as f64 / trials as f64 - 0.5).abs() < 4.0 * sd);
}

#[test]
fn typed_sampler_rejects_infeasible_counts() {
    let d = ksat_core::SignedDegreeSequence::new(2, 1, vec![(1, 1)]).unwrap();
    let mut counts = ksat_core::ClauseTypeCounts::default();
    counts.counts.insert(ClauseType(vec![TypeCode(1); 2]), 1);
    assert!(matches!(
        sample_formula_given_degrees_and_types(&d, &counts, 0),
        Err(GenError::InfeasibleTypes { .. })
    ));
    let mut two = ksat_core::ClauseTypeCounts::default();
    two.counts.insert(ClauseType(vec![TypeCode::HALF; 2]), 2);
    assert!(matches!(
        sample_formula_given_degrees_and_types(&d, &two, 0),
        Err(GenError::ClauseCountMismatch { .. })
    ));
}

#[test]
fn planted_pairs_are_satisfied() {
    for seed in 0..300 {
        let (f, sigma) = sample_planted_pair(20, 90, 3, seed).unwrap();
        assert!(f.is_satisfied_by(&sigma));
    }
}

#[test]
fn planted_positive_bias_matches_conditioning() {
    let k = 3;
    let n = 50;
    let m = 100_000;
    let sigma = Assignment::all_true(n);
    let mut rng = stream_rng(8, 0);
    let f = sample_planted_formula_with(&sigma, m, k, &mut rng).unwrap();
    let per_clause: Vec<f64> = f
        .clauses()
        .map(|c| c.iter().filter(|l| l.is_positive()).count() as f64)
        .collect();
    let mean = per_clause.iter().sum::<f64>() / m as f64;
    let var = per_clause.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
    let frac = mean / k as f64;
    let sd_frac = (var / m as f64).sqrt() / k as f64;
    let ratio = frac / (1.0 - frac);
    let eps = 1.0 / ((1u64 << k) - 1) as f64;
    let want = (1.0 + eps) / (1.0 - eps);
    // Delta method: d(ratio)/d(frac) = 1/(1−frac)².
    let sd_ratio = sd_frac / (1.0 - frac).powi(2);
    assert!((ratio - want).abs() < 3.0 * sd_ratio, "ratio={ratio}, want={want}");
}
