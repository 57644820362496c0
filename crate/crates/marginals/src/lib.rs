//! Marginal maps, the majority vote and assignment predicates.
//!
//! All counting predicates work in exact integer arithmetic. A type
//! `t = 1/2 + z/2^{k+1}` is compared against an integer count `c` of a class
//! of size `s` via `|c·2^{k+1} − (2^k + z)·s| ≤ slack·2^{k+1}`, so no float
//! rounding can flip a verdict.

use std::collections::BTreeMap;

use ksat_core::{Assignment, ClauseType, Formula, SignedDegreeSequence, TypeTable};
use num_rational::Ratio;
use thiserror::Error;

pub use ksat_core::{MarginalMap, TypeCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarginalsError {
    #[error("no literal occurrences (k*m = 0)")]
    NoOccurrenceMass,
}

/// `p(z) = 1/2 + z/2^{k+1}` when `|z| ≤ 10√(k·2^k·ln k)`, else `1/2`.
pub fn p_bp(z: i64, k: usize) -> f64 {
    MarginalMap::new(k).p(z)
}

/// [`p_bp`] as an exact rational.
pub fn p_bp_exact(z: i64, k: usize) -> Ratio<i128> {
    let code = MarginalMap::new(k).code(z);
    Ratio::new(code.numerator(k), 1i128 << (k + 1))
}

/// The majority vote: `σ(x) = 1` iff `d_x > d_¬x`; ties go to false.
pub fn majority_vote(d: &SignedDegreeSequence) -> Assignment {
    Assignment::new(d.pairs().iter().map(|&(p, q)| p > q).collect())
}

/// `w_maj = Σ_x max(d_x, d_¬x) / (km)`.
pub fn majority_weight(d: &SignedDegreeSequence) -> Result<Ratio<u64>, MarginalsError> {
    let km = d.km();
    if km == 0 {
        return Err(MarginalsError::NoOccurrenceMass);
    }
    let top: u64 = d.pairs().iter().map(|&(p, q)| p.max(q)).sum();
    Ok(Ratio::new(top, km))
}

/// The conjectured leading-order marginal `1/2 + (d_x − d_¬x)/2^{k+1}`,
/// clamped to `[0, 1]` and without truncation.
pub fn bp_conjectured_marginal(d_x: u64, d_neg_x: u64, k: usize) -> f64 {
    let z = d_x as f64 - d_neg_x as f64;
    (0.5 + z / (2.0f64).powi(k as i32 + 1)).clamp(0.0, 1.0)
}

fn within_type_slack(count: u64, size: u64, code: TypeCode, k: usize, slack: u64) -> bool {
    let scale = 1i128 << (k + 1);
    let lhs = count as i128 * scale;
    let rhs = code.numerator(k) * size as i128;
    (lhs - rhs).abs() <= slack as i128 * scale
}

/// Whether `sigma` has the p-marginals of `table`.
///
/// For every good signature `(d⁺, d⁻)` the number of true positive literals
/// among the variables of that signature must be `p(d⁺ − d⁻)` times their
/// number, up to one literal (the negative-literal condition is then the same
/// statement). Over all literals of type `1/2` the true occurrence mass must
/// be half their mass, up to one occurrence.
pub fn has_p_marginals(sigma: &Assignment, d: &SignedDegreeSequence, table: &TypeTable) -> bool {
    let k = table.k();
    let mut classes: BTreeMap<(u64, u64), (u64, u64)> = BTreeMap::new();
    let (mut half_true, mut half_mass) = (0u64, 0u64);
    for (x, &(p, q)) in d.pairs().iter().enumerate() {
        if table.is_good(x) {
            let e = classes.entry((p, q)).or_insert((0, 0));
            e.0 += u64::from(sigma.get(x));
            e.1 += 1;
        } else {
            half_mass += p + q;
            half_true += if sigma.get(x) { p } else { q };
        }
    }
    let classes_ok = classes.iter().all(|(&(p, q), &(t, s))| {
        within_type_slack(t, s, TypeCode(p as i64 - q as i64), k, 1)
    });
    let half_ok = (2 * half_true as i128 - half_mass as i128).abs() <= 2;
    classes_ok && half_ok
}

/// Whether `sigma` is judicious: for each clause type `ℓ` and position `j`,
/// the number of type-`ℓ` clauses whose `j`-th literal is true is within one
/// of `m(ℓ)·ℓ_j`.
pub fn is_judicious(sigma: &Assignment, formula: &Formula, table: &TypeTable) -> bool {
    let k = formula.k();
    let mut tally: BTreeMap<ClauseType, (u64, Vec<u64>)> = BTreeMap::new();
    for c in formula.clauses() {
        let e = tally
            .entry(table.clause_type(c))
            .or_insert_with(|| (0, vec![0; k]));
        e.0 += 1;
        for (j, &l) in c.iter().enumerate() {
            e.1[j] += u64::from(sigma.literal_value(l));
        }
    }
    tally.iter().all(|(l, (m_l, trues))| {
        l.0.iter()
            .zip(trues)
            .all(|(&t, &c)| within_type_slack(c, *m_l, t, table.k(), 1))
    })
}

/// Whether `sigma` makes `km/2 ± 1` literal occurrences true.
pub fn is_balanced(sigma: &Assignment, formula: &Formula) -> bool {
    let t = formula.true_occurrences(sigma) as i128;
    (2 * t - formula.km() as i128).abs() <= 2
}

/// The skew `Σ = (1/km)·Σ_x (1 − 2p_d(x))·(d_x − d_¬x)`, exactly.
pub fn sigma_skew(d: &SignedDegreeSequence, table: &TypeTable) -> Result<Ratio<i128>, MarginalsError> {
    let pairs: Vec<(i64, i64)> = (0..d.n())
        .map(|x| (table.var_code(x).0, d.imbalance(x)))
        .collect();
    skew_from_pairs(table.k(), d.km(), &pairs)
}

/// [`sigma_skew`] from raw `(z_x, d_x − d_¬x)` pairs, where the type of `x`
/// is `1/2 + z_x/2^{k+1}` so that `1 − 2p(x) = −z_x/2^k`.
pub fn skew_from_pairs(k: usize, km: u64, pairs: &[(i64, i64)]) -> Result<Ratio<i128>, MarginalsError> {
    if km == 0 {
        return Err(MarginalsError::NoOccurrenceMass);
    }
    let num: i128 = pairs.iter().map(|&(z, dd)| z as i128 * dd as i128).sum();
    Ok(Ratio::new(-num, (1i128 << k) * km as i128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ksat_core::{build_type_table, Literal};

    fn lit(x: i64) -> Literal {
        Literal::from_dimacs(x).unwrap()
    }

    #[test]
    fn p_bp_values() {
        assert_eq!(p_bp(0, 5), 0.5);
        assert_eq!(p_bp(4, 10), 0.501953125);
        assert_eq!(p_bp(2000, 10), 0.5);
        assert_eq!(p_bp_exact(4, 10), Ratio::new(1028, 2048));
        for z in -3000..3000 {
            assert_eq!(p_bp(-z, 10), 1.0 - p_bp(z, 10));
        }
    }

    #[test]
    fn majority_vote_ties_go_false() {
        let d = SignedDegreeSequence::new(2, 4, vec![(3, 1), (2, 2), (0, 0)]).unwrap();
        assert_eq!(majority_vote(&d).values(), &[true, false, false]);
    }

    #[test]
    fn majority_weight_hand_value() {
        let f = Formula::new(
            3,
            3,
            &[vec![lit(1), lit(2), lit(3)], vec![lit(1), lit(-2), lit(3)]],
        )
        .unwrap();
        assert_eq!(majority_weight(&f.degree_sequence()).unwrap(), Ratio::new(5, 6));
        let bal = SignedDegreeSequence::new(2, 3, vec![(2, 2), (1, 1)]).unwrap();
        assert_eq!(majority_weight(&bal).unwrap(), Ratio::new(1, 2));
        let pos = SignedDegreeSequence::new(2, 3, vec![(4, 0), (2, 0)]).unwrap();
        assert_eq!(majority_weight(&pos).unwrap(), Ratio::new(1, 1));
        let empty = SignedDegreeSequence::new(2, 0, vec![(0, 0)]).unwrap();
        assert!(majority_weight(&empty).is_err());
    }

    #[test]
    fn conjectured_marginal() {
        assert_eq!(bp_conjectured_marginal(4, 4, 3), 0.5);
        assert_eq!(bp_conjectured_marginal(3, 1, 3), 0.625);
        assert_eq!(bp_conjectured_marginal(100, 0, 3), 1.0);
        assert_eq!(bp_conjectured_marginal(0, 100, 3), 0.0);
    }

    #[test]
    fn balanced_predicate() {
        // (x ∨ ¬x ∨ y) with y true: two of three occurrences true.
        let f = Formula::new(2, 3, &[vec![lit(1), lit(-1), lit(2)]]).unwrap();
        for x in [false, true] {
            assert!(is_balanced(&Assignment::new(vec![x, true]), &f));
        }
        let g = Formula::new(3, 3, &[vec![lit(1), lit(2), lit(3)], vec![lit(1), lit(2), lit(3)]])
            .unwrap();
        assert!(!is_balanced(&Assignment::all_true(3), &g));
        let empty = Formula::new(3, 3, &[]).unwrap();
        assert!(is_balanced(&Assignment::all_true(3), &empty));
    }

    #[test]
    fn judicious_predicate() {
        // Degrees (10, 0) exceed 3kr/4 = 7.5, so both variables fall back to
        // type 1/2 and every position should be true in half the clauses.
        let clauses: Vec<Vec<Literal>> = (0..10).map(|_| vec![lit(1), lit(2)]).collect();
        let f = Formula::new(2, 2, &clauses).unwrap();
        let t = build_type_table(&f.degree_sequence()).unwrap();
        assert_eq!(t.types(), vec![TypeCode::HALF]);
        assert!(!is_judicious(&Assignment::all_true(2), &f, &t));
        assert!(!is_judicious(&Assignment::new(vec![true, false]), &f, &t));

        // A single clause is always judicious.
        let one = Formula::new(2, 2, &[vec![lit(1), lit(2)]]).unwrap();
        let t1 = build_type_table(&one.degree_sequence()).unwrap();
        for mask in 0..4 {
            assert!(is_judicious(&Assignment::from_mask(2, mask), &one, &t1));
        }
    }

    #[test]
    fn judicious_half_split() {
        // Two balanced variables, clauses (x ∨ y), (¬x ∨ ¬y) repeated: with
        // x true and y false, position 1 is true in exactly half the clauses.
        let mut clauses = Vec::new();
        for _ in 0..4 {
            clauses.push(vec![lit(1), lit(2)]);
            clauses.push(vec![lit(-1), lit(-2)]);
        }
        let f = Formula::new(2, 2, &clauses).unwrap();
        let t = build_type_table(&f.degree_sequence()).unwrap();
        assert!(is_judicious(&Assignment::new(vec![true, false]), &f, &t));
        assert!(is_judicious(&Assignment::new(vec![true, true]), &f, &t));
    }

    #[test]
    fn skew_hand_value() {
        assert_eq!(skew_from_pairs(3, 4, &[(2, 2)]).unwrap(), Ratio::new(-1, 8));
        assert!(skew_from_pairs(3, 0, &[]).is_err());
    }
}
