mod common;

use common::tensor::lowering_table;
use num_bigint::BigInt;
use trailcone::sl2::{
    coefficient_a, coefficient_a_oracle, coefficient_value, shift_system_rank, vanishing_identity, RecurrenceTable, Sl2Config, Sl2Error,
};

fn tuples(len: usize, max: i64) -> Vec<Vec<i64>> {
    (0..len).fold(vec![Vec::new()], |acc, _| acc.into_iter().flat_map(|p| (0..=max).map(move |x| [p.clone(), vec![x]].concat())).collect())
}

/// Closed form, recurrence and tensor expansion agree for `n ≤ 3` and all
/// entries of `a`, `k`, `l` in `0..=4`.
#[test]
fn closed_form_matches_both_oracles_on_grid() {
    let mut compared = 0usize;
    for n in 1..=3 {
        for a in tuples(n, 4) {
            for k in tuples(n, 4) {
                let table = lowering_table(&a, &k);
                for l in tuples(n, 4) {
                    let cfg = Sl2Config { a: a.clone(), k: k.clone(), l: l.clone() };
                    let closed = coefficient_value(&cfg);
                    let b: i64 = k.iter().zip(&l).map(|(x, y)| x - y).sum();
                    let expanded = if (0..=k.iter().sum()).contains(&b) { table[b as usize].get(&l).copied().unwrap_or(0) } else { 0 };
                    assert_eq!(closed, BigInt::from(expanded), "a={a:?} k={k:?} l={l:?}");
                    compared += 1;
                }
            }
        }
        for a in tuples(n, 4) {
            for l in tuples(n, 4) {
                let mut table = RecurrenceTable::new(&a, &l);
                for k in tuples(n, 4) {
                    let cfg = Sl2Config { a: a.clone(), k: k.clone(), l: l.clone() };
                    assert_eq!(table.value(&k), coefficient_value(&cfg), "a={a:?} k={k:?} l={l:?}");
                }
            }
        }
    }
    assert_eq!(compared, 5usize.pow(3) + 5usize.pow(6) + 5usize.pow(9));
}

/// When `a^(j) − k^(j) − ℓ^(j−1) ≥ 0` for every `j`, each linear factor is
/// positive and so is the coefficient.
#[test]
fn rigid_regime_factors_are_positive() {
    for n in 1..=3 {
        for a in tuples(n, 4) {
            for k in tuples(n, 4) {
                for l in tuples(n, 4) {
                    let prefix = |v: &[i64], j: usize| v[..j].iter().sum::<i64>();
                    let regime = (1..=n).all(|j| prefix(&a, j) - prefix(&k, j) - prefix(&l, j - 1) >= 0);
                    let cfg = Sl2Config { a: a.clone(), k: k.clone(), l: l.clone() };
                    if regime && cfg.negative_b().is_none() {
                        assert!(cfg.linear_factors().iter().all(|&f| f > 0), "{cfg:?}");
                        assert!(coefficient_a(&cfg).unwrap() > BigInt::from(0));
                    }
                }
            }
        }
    }
}

#[test]
fn worked_two_factor_case() {
    let cfg = Sl2Config { a: vec![3, 2], k: vec![1, 2], l: vec![0, 1] };
    let expanded = lowering_table(&cfg.a, &cfg.k)[2].get(&cfg.l).copied().unwrap_or(0);
    assert_eq!(coefficient_a(&cfg).unwrap(), BigInt::from(expanded));
    assert_eq!(coefficient_a_oracle(&cfg), BigInt::from(expanded));
    let single = Sl2Config { a: vec![4], k: vec![3], l: vec![1] };
    assert_eq!(coefficient_a(&single).unwrap(), coefficient_a_oracle(&single));
}

#[test]
fn alternating_sum_vanishes_on_its_domain() {
    for q in 1..=6 {
        for u in 0..q {
            for p1 in 0..=8 {
                for p2 in q..=8 {
                    assert_eq!(vanishing_identity(q, p1, p2, u).unwrap(), BigInt::from(0), "q={q} u={u} p1={p1} p2={p2}");
                }
            }
        }
    }
    assert!(matches!(vanishing_identity(3, 0, 2, 0), Err(Sl2Error::DomainError(_))));
}

/// The shift system has full rank `q` on the sweep, so the quasi-equal
/// factors are its unique solution up to a scalar.
#[test]
fn shift_system_has_full_rank() {
    for q in 1..=6 {
        for p1 in 0..=8 {
            for p2 in q..=8 {
                assert_eq!(shift_system_rank(q, p1, p2).unwrap(), q as usize, "q={q} p1={p1} p2={p2}");
            }
        }
    }
}
