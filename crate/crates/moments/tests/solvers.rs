use std::f64::consts::LN_2;

use ksat_bounds::r_bp;
use ksat_moments::{
    binom_rate, check_hessian_bound, entropy, first_moment_exponent, offdiag_exponent,
    pair_gradient, product_exponent, solve_first_moment_q, solve_pair_q,
    verify_offdiag, ClauseWeights, MomentsError, TypeEntry, TypeProfile,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn golden_q() -> f64 {
    (3.0 - 5f64.sqrt()) / 2.0
}

/// Naive substitution of a first-moment solution: `q_j / (1 − ∏(1−q)) − ℓ_j`.
fn first_substitution(q: &[f64], ell: &[f64]) -> f64 {
    let prod: f64 = q.iter().map(|v| 1.0 - v).product();
    q.iter().zip(ell).map(|(a, l)| (a / (1.0 - prod) - l).abs()).fold(0.0, f64::max)
}

/// Naive substitution of a pair solution, evaluating both conditional
/// probabilities from the four-state distribution by brute force over the
/// `4^k` joint literal states (only feasible for small k) or the product
/// formula otherwise.
fn pair_substitution(q: &[f64], q11: &[f64], ell: &[f64], omega: &[f64]) -> f64 {
    let k = q.len();
    let all_false: f64 = q.iter().map(|v| 1.0 - v).product();
    let both_false: f64 = q.iter().zip(q11).map(|(a, b)| 1.0 - 2.0 * a + b).product();
    let den = 1.0 - 2.0 * all_false + both_false;
    let mut worst = 0f64;
    for j in 0..k {
        let others: f64 = (0..k).filter(|&h| h != j).map(|h| 1.0 - q[h]).product();
        let true_and_both = q11[j] + (q[j] - q11[j]) * (1.0 - others);
        worst = worst.max((true_and_both / den - ell[j]).abs());
        worst = worst.max((q11[j] / den - omega[j]).abs());
    }
    worst
}

fn brute_pair_substitution(q: &[f64], q11: &[f64], ell: &[f64], omega: &[f64]) -> f64 {
    let k = q.len();
    let mut den = 0.0;
    let mut first_true = vec![0.0; k];
    let mut both_true = vec![0.0; k];
    for code in 0..4usize.pow(k as u32) {
        let mut p = 1.0;
        let (mut sat_a, mut sat_b) = (false, false);
        let mut states = Vec::with_capacity(k);
        let mut c = code;
        for j in 0..k {
            let s = c % 4;
            c /= 4;
            let (a, b) = (s & 1 == 1, s & 2 == 2);
            p *= match (a, b) {
                (true, true) => q11[j],
                (true, false) | (false, true) => q[j] - q11[j],
                (false, false) => 1.0 - 2.0 * q[j] + q11[j],
            };
            sat_a |= a;
            sat_b |= b;
            states.push((a, b));
        }
        if sat_a && sat_b {
            den += p;
            for (j, &(a, b)) in states.iter().enumerate() {
                if a {
                    first_true[j] += p;
                }
                if a && b {
                    both_true[j] += p;
                }
            }
        }
    }
    (0..k)
        .map(|j| (first_true[j] / den - ell[j]).abs().max((both_true[j] / den - omega[j]).abs()))
        .fold(0.0, f64::max)
}

fn random_pair(rng: &mut ChaCha8Rng, k: usize) -> (Vec<f64>, Vec<f64>) {
    let ell: Vec<f64> = (0..k).map(|_| rng.random_range(0.35..0.65)).collect();
    let omega = ell.iter().map(|l| l * l * (1.0 + 0.1 * rng.random_range(-1.0..1.0))).collect();
    (ell, omega)
}

#[test]
fn rate_function_matches_exact_binomial() {
    let n = 1000u64;
    let ln_exact = statrs::function::factorial::ln_binomial(n, n / 4) - n as f64 * LN_2;
    let ln_approx = n as f64 * binom_rate(0.5, 0.25).unwrap()
        - 0.5 * (2.0 * std::f64::consts::PI * n as f64 * 0.25 * 0.75).ln();
    assert!((ln_exact - ln_approx).abs() < LN_2, "{ln_exact} vs {ln_approx}");
}

#[test]
fn offdiag_point_values() {
    let v = offdiag_exponent(0.25, 20, r_bp(20));
    assert!((v + 0.1287).abs() < 2e-4, "{v}");
    assert!((entropy(0.3) - entropy(0.7)).abs() < 1e-15);
}

#[test]
fn clause_term_decreases_in_overlap() {
    for k in [8usize, 12, 20] {
        let r = r_bp(k);
        let clause = |x: f64| offdiag_exponent(x, k, r) - LN_2 - entropy(x);
        // Strictly decreasing where the change is visible in double
        // precision, non-increasing up to rounding everywhere else.
        let mut prev = clause(1e-4);
        for i in 1..1000 {
            let x = 1e-4 + i as f64 * (1.0 - 2e-4) / 999.0;
            let cur = clause(x);
            if x <= 0.5 {
                assert!(cur < prev, "k={k} x={x}");
            } else {
                assert!(cur <= prev + 1e-14, "k={k} x={x}");
            }
            prev = cur;
        }
    }
}

#[test]
fn offdiag_sweeps() {
    for k in [12usize, 16, 20] {
        let rep = verify_offdiag(k, r_bp(k), 100_000).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.grid_points >= 100_000 && rep.max_value.unwrap() < 0.0);
    }
    let rep = verify_offdiag(25, 2f64.powi(25) * LN_2, 100_000).unwrap();
    assert!(rep.passed);

    let rep = verify_offdiag(8, r_bp(8), 100_000).unwrap();
    assert!(rep.passed && rep.grid_points == 0 && rep.max_value.is_none());

    assert!(matches!(verify_offdiag(7, r_bp(7), 10), Err(MomentsError::Domain(_))));
}

#[test]
fn offdiag_lower_boundary_is_negative() {
    for k in 8..=30usize {
        let x = k as f64 * 2f64.powi(-(k as i32));
        assert!(offdiag_exponent(x, k, r_bp(k)) < 0.0, "k={k}");
    }
}

#[test]
fn offdiag_near_the_centre_is_quadratically_small() {
    for k in [16usize, 20, 24] {
        let xi = k as f64 * 2f64.powf(-(k as f64) / 2.0);
        let v = offdiag_exponent(0.5 - xi * (1.0 + 1e-9), k, r_bp(k));
        assert!(v < 0.0, "k={k}");
        assert!(v > -4.0 * xi * xi, "k={k}: {v} vs ξ²={}", xi * xi);
    }
}

#[test]
fn symmetric_first_moment_solutions() {
    let sol = solve_first_moment_q(&[0.5; 3]).unwrap();
    for q in &sol.q {
        assert!((q - golden_q()).abs() < 1e-10);
    }
    assert!(sol.residual <= 1e-12);

    let k = 20;
    let sol = solve_first_moment_q(&vec![0.5; k]).unwrap();
    let tol = (k as f64).powi(3) * 2f64.powf(-1.5 * k as f64);
    for q in &sol.q {
        assert!((q - (0.5 - 2f64.powi(-21))).abs() <= tol);
    }
    assert!(first_substitution(&sol.q, &sol.ell) <= 1e-12);
}

#[test]
fn first_moment_residuals_on_random_types() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in [3usize, 5, 10, 15, 20] {
        for _ in 0..25 {
            let ell: Vec<f64> = loop {
                let ell: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..0.95)).collect();
                if ell.iter().sum::<f64>() > 1.2 {
                    break ell;
                }
            };
            let sol = solve_first_moment_q(&ell).unwrap();
            assert!(sol.residual <= 1e-12);
            assert!(first_substitution(&sol.q, &ell) <= 1e-12, "k={k} {ell:?}");
            assert!(sol.q.iter().all(|&q| q > 0.0 && q < 1.0));
        }
    }
}

#[test]
fn first_moment_rejects_degenerate_types() {
    assert!(solve_first_moment_q(&[0.5, 1.0, 0.5]).is_err());
    assert!(solve_first_moment_q(&[]).is_err());
    assert!(matches!(solve_first_moment_q(&[0.3, 0.3, 0.3]), Err(MomentsError::Domain(_))));
}

fn bp_profile(k: usize) -> TypeProfile {
    let r = r_bp(k);
    let a = (k as f64 * r).sqrt().round();
    let c = (k as f64 * r - a) / 2.0;
    let t = 0.5 + a / 2f64.powi(k as i32 + 1);
    TypeProfile::new(
        k,
        vec![
            TypeEntry { value: t, pi: (c + a) / (2.0 * c + a), var_fraction: 1.0 },
            TypeEntry { value: 1.0 - t, pi: c / (2.0 * c + a), var_fraction: 0.0 },
        ],
    )
}

#[test]
fn balanced_first_moment_matches_its_closed_form() {
    for k in [12usize, 15, 20] {
        let profile = TypeProfile::balanced(k);
        assert_eq!(profile.entropy_term(), LN_2);
        let rep = first_moment_exponent(&profile, &ClauseWeights::Product { r: r_bp(k) }).unwrap();
        let target = rep.reference_balanced * 2f64.powi(k as i32);
        assert!((rep.scaled - target).abs() < 0.05, "k={k}: {} vs {target}", rep.scaled);
        assert!(rep.max_residual <= 1e-12);
    }
}

#[test]
fn marginal_map_table_reaches_ln2() {
    let gap = |k: usize| {
        let rep = first_moment_exponent(&bp_profile(k), &ClauseWeights::Product { r: r_bp(k) }).unwrap();
        assert!((rep.r / r_bp(k) - 1.0).abs() < 1e-12);
        assert!((rep.reference * 2f64.powi(k as i32) - LN_2).abs() < 1e-6);
        (rep.scaled - LN_2).abs()
    };
    assert_eq!(TypeProfile::two_type(15, r_bp(15)), bp_profile(15));
    let g15 = gap(15);
    let g20 = gap(20);
    assert!(g15 < 0.2, "{g15}");
    assert!(g20 < g15, "{g20} vs {g15}");
}

#[test]
fn realized_weights_agree_with_product_weights_on_one_type() {
    let k = 5;
    let r = 7.0;
    let profile = TypeProfile::balanced(k);
    let product = first_moment_exponent(&profile, &ClauseWeights::Product { r }).unwrap();
    let realized = first_moment_exponent(
        &profile,
        &ClauseWeights::Realized(vec![(vec![0.5; k], r / 2.0), (vec![0.5; k], r / 2.0)]),
    )
    .unwrap();
    assert!((product.exponent - realized.exponent).abs() < 1e-15);
    assert_eq!(realized.clause_types_solved, 1);
}

#[test]
fn pair_solution_at_product_overlap() {
    let sol = solve_pair_q(&[0.5; 3], &[0.25; 3]).unwrap();
    for (q, q11) in sol.q.iter().zip(&sol.q11) {
        assert!((q - golden_q()).abs() < 1e-10);
        assert!((q11 - q * q).abs() < 1e-10);
        assert!((q11 - 0.145898).abs() < 1e-6);
    }
    assert!(brute_pair_substitution(&sol.q, &sol.q11, &sol.ell, &sol.omega) <= 1e-12);

    let k = 20;
    let sol = solve_pair_q(&vec![0.5; k], &vec![0.25; k]).unwrap();
    let first = solve_first_moment_q(&vec![0.5; k]).unwrap();
    let tol = (k as f64).powi(3) * 2f64.powf(-1.5 * k as f64);
    for j in 0..k {
        assert!((sol.q[j] - first.q[j]).abs() < 1e-10);
        assert!((sol.q[j] - (0.5 - 2f64.powi(-21))).abs() <= tol);
    }
}

#[test]
fn pair_exponent_at_product_overlap_is_twice_the_first_moment_term() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in [3usize, 10, 20] {
        let mut cases = vec![vec![0.5; k]];
        cases.push((0..k).map(|_| rng.random_range(0.35..0.65)).collect());
        for ell in cases {
            let omega: Vec<f64> = ell.iter().map(|l| l * l).collect();
            let sol = solve_pair_q(&ell, &omega).unwrap();
            for (q, q11) in sol.q.iter().zip(&sol.q11) {
                assert!((q11 - q * q).abs() < 1e-10);
            }
            let expected = product_exponent(&ell).unwrap();
            assert!((sol.exponent - expected).abs() < 1e-11, "k={k}");
            assert!(sol.exponent < 0.0);
        }
    }
}

#[test]
fn pair_residuals_on_random_overlaps() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in [5usize, 10, 15, 20] {
        for _ in 0..100 {
            let (ell, omega) = random_pair(&mut rng, k);
            let sol = solve_pair_q(&ell, &omega).unwrap();
            assert!(sol.residual <= 1e-12);
            assert!(pair_substitution(&sol.q, &sol.q11, &ell, &omega) <= 1e-12, "k={k}");
            assert!(sol.q00().iter().all(|&v| v > 0.0 && v < 1.0));
            if k == 5 {
                assert!(brute_pair_substitution(&sol.q, &sol.q11, &ell, &omega) <= 1e-12);
            }
        }
    }
}

#[test]
fn infeasible_overlaps_are_rejected() {
    assert!(matches!(solve_pair_q(&[0.5; 3], &[0.5; 3]), Err(MomentsError::InfeasibleOverlap(_))));
    assert!(matches!(solve_pair_q(&[0.5; 3], &[0.4; 3]), Err(MomentsError::InfeasibleOverlap(_))));
    assert!(matches!(solve_pair_q(&[0.5; 3], &[0.25; 2]), Err(MomentsError::InfeasibleOverlap(_))));
}

#[test]
fn gradient_vanishes_at_product_overlap() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in [10usize, 12, 15] {
        for ell in [vec![0.5; k], (0..k).map(|_| rng.random_range(0.4..0.6)).collect()] {
            let omega: Vec<f64> = ell.iter().map(|l| l * l).collect();
            let grad = pair_gradient(&ell, &omega, 1e-4).unwrap();
            let norm = grad.iter().fold(0f64, |a, b| a.max(b.abs()));
            assert!(norm <= 1e-6, "k={k}: {norm}");
        }
    }
}

#[test]
fn hessian_bound_and_scaling() {
    let h10 = check_hessian_bound(&[0.5; 10], 1e-3).unwrap();
    assert!(h10.within_bound, "{}", h10.max_abs);
    let diag = (0..10).map(|i| h10.matrix[i][i].abs()).fold(0.0, f64::max);
    let off = h10.matrix[1][0].abs();
    assert!(diag <= h10.bound && off <= h10.bound);

    let h15 = check_hessian_bound(&[0.5; 15], 1e-3).unwrap();
    assert!(h15.within_bound);
    // 4^{−5} ≈ 1e−3; allow a polylog factor either way.
    let ratio = h15.max_abs / h10.max_abs;
    assert!(ratio < 1e-2 && ratio > 1e-4, "ratio {ratio}");
}

proptest! {
    #[test]
    fn rate_is_nonpositive(p in 0.001f64..0.999, q in 0.001f64..0.999) {
        let v = binom_rate(p, q).unwrap();
        prop_assert!(v <= 1e-15);
        if (p - q).abs() > 1e-3 {
            prop_assert!(v < 0.0);
        }
    }

    #[test]
    fn entropy_is_concave_with_peak_at_half(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let mid = entropy((a + b) / 2.0);
        prop_assert!(mid + 1e-15 >= (entropy(a) + entropy(b)) / 2.0);
        prop_assert!(entropy(a) <= LN_2 + 1e-15);
    }

    #[test]
    fn first_moment_substitution(
        ell in prop::collection::vec(0.02f64..0.98, 2..12)
            .prop_filter("satisfiable type", |v| v.iter().sum::<f64>() > 1.05)
    ) {
        let sol = solve_first_moment_q(&ell).unwrap();
        prop_assert!(first_substitution(&sol.q, &ell) <= 1e-12);
    }
}
