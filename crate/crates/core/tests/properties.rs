use ksat_core::degree_io::{emit_degree_sequence, parse_degree_sequence};
use ksat_core::dimacs::{emit_dimacs, parse_dimacs};
use ksat_core::{build_type_table, clause_type_counts, Formula, Literal, TypeCode};
use proptest::prelude::*;

fn formula_strategy() -> impl Strategy<Value = Formula> {
    (1usize..8, 1usize..5, 0usize..12).prop_flat_map(|(n, k, m)| {
        prop::collection::vec(0..2 * n, m * k).prop_map(move |codes| {
            let slots = codes.into_iter().map(Literal::from_code).collect();
            Formula::from_slots(n, k, slots).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn dimacs_round_trip(f in formula_strategy()) {
        prop_assert_eq!(parse_dimacs(&emit_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn degree_file_round_trip(f in formula_strategy()) {
        let d = f.degree_sequence();
        prop_assert_eq!(parse_degree_sequence(&emit_degree_sequence(&d)).unwrap(), d);
    }

    #[test]
    fn degrees_ignore_clause_order(f in formula_strategy(), rot in 0usize..12) {
        let mut clauses: Vec<Vec<Literal>> = f.clauses().map(|c| c.to_vec()).collect();
        if !clauses.is_empty() {
            let r = rot % clauses.len();
            clauses.rotate_left(r);
            clauses.reverse();
        }
        let g = Formula::new(f.n(), f.k(), &clauses).unwrap();
        prop_assert_eq!(g.degree_sequence(), f.degree_sequence());
    }

    #[test]
    fn type_masses_account_for_every_occurrence(f in formula_strategy()) {
        prop_assume!(f.m() > 0);
        let d = f.degree_sequence();
        let t = build_type_table(&d).unwrap();
        let total: u64 = t.types().iter().map(|&c| t.mass(c)).sum();
        prop_assert_eq!(total, d.km());
        for c in t.types() {
            prop_assert!(t.types().contains(&c.complement()));
        }
        for x in 0..f.n() {
            let p = t.literal_value(Literal::positive(x));
            let q = t.literal_value(Literal::negative(x));
            prop_assert_eq!(p + q, 1.0);
        }
        let counts = clause_type_counts(&f, &t);
        prop_assert_eq!(counts.total(), f.m());
        let demand = counts.slot_demand();
        for c in t.types() {
            prop_assert_eq!(demand.get(&c).copied().unwrap_or(0), t.mass(c));
        }
    }
}

#[test]
fn balanced_formula_has_one_clause_type() {
    let f = Formula::new(
        2,
        2,
        &[
            vec![Literal::positive(0), Literal::negative(1)],
            vec![Literal::negative(0), Literal::positive(1)],
        ],
    )
    .unwrap();
    let t = build_type_table(&f.degree_sequence()).unwrap();
    let counts = clause_type_counts(&f, &t);
    assert_eq!(counts.counts.len(), 1);
    assert_eq!(
        counts.get(&ksat_core::ClauseType(vec![TypeCode::HALF; 2])),
        2
    );
}

#[test]
fn two_distinct_clause_types() {
    let (x, y) = (0, 1);
    let f = Formula::new(
        2,
        3,
        &[
            vec![Literal::positive(x), Literal::positive(x), Literal::positive(y)],
            vec![Literal::positive(y), Literal::negative(y), Literal::negative(y)],
        ],
    )
    .unwrap();
    let d = f.degree_sequence();
    assert_eq!(d.pair(x), (2, 0));
    assert_eq!(d.pair(y), (2, 2));
    // r = 1 so 3kr/4 = 2.25: x is good with z = 2, y is balanced.
    let t = build_type_table(&d).unwrap();
    assert!(t.is_good(x));
    let counts = clause_type_counts(&f, &t);
    let a = ksat_core::ClauseType(vec![TypeCode(2), TypeCode(2), TypeCode::HALF]);
    let b = ksat_core::ClauseType(vec![TypeCode::HALF; 3]);
    assert_eq!(counts.counts.len(), 2);
    assert_eq!(counts.get(&a), 1);
    assert_eq!(counts.get(&b), 1);
}
