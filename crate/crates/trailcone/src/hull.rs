//! Exact extremality for finite point sets in `Z^d`.
//!
//! A point is discarded when it is the midpoint of two other points of the
//! set. Survivors are tested for membership in the convex hull of the other
//! points with a phase-one simplex over the rationals (Bland's rule).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// The points of `points` that are not convex combinations of the others,
/// in input order. Duplicates are collapsed first.
pub fn extreme_points(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let distinct: Vec<Vec<i64>> = {
        let mut seen = BTreeSet::new();
        points.iter().filter(|p| seen.insert((*p).clone())).cloned().collect()
    };
    let set: BTreeSet<&Vec<i64>> = distinct.iter().collect();
    distinct
        .iter()
        .enumerate()
        .filter(|(k, p)| {
            let midpoint = distinct.iter().any(|q| {
                q != *p && {
                    let mirror: Vec<i64> = p.iter().zip(q).map(|(a, b)| 2 * a - b).collect();
                    set.contains(&mirror)
                }
            });
            if midpoint {
                return false;
            }
            let others: Vec<&Vec<i64>> = distinct.iter().enumerate().filter(|(i, _)| i != k).map(|(_, q)| q).collect();
            !in_convex_hull(p, &others)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

/// Whether `target` is a convex combination of `generators`.
pub fn in_convex_hull(target: &[i64], generators: &[&Vec<i64>]) -> bool {
    if generators.is_empty() {
        return false;
    }
    let d = target.len();
    let cols = generators.len();
    // Rows: one per coordinate plus the normalisation Σλ = 1.
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(d + 1);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(d + 1);
    for i in 0..d {
        rows.push(generators.iter().map(|g| int(g[i])).collect());
        rhs.push(int(target[i]));
    }
    rows.push(vec![BigRational::one(); cols]);
    rhs.push(BigRational::one());
    phase_one_feasible(rows, rhs)
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Decides `{x ≥ 0 : A x = b}` ≠ ∅.
fn phase_one_feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let m = a.len();
    let n = a[0].len();
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            a[i].iter_mut().for_each(|x| *x = -x.clone());
        }
    }
    // Tableau columns: n structural, m artificial.
    let total = n + m;
    let mut tab: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..total).collect();
    // Objective: minimise the sum of artificials; reduced costs below.
    let mut cost: Vec<BigRational> =
        (0..total).map(|j| if j < n { -tab.iter().map(|r| r[j].clone()).sum::<BigRational>() } else { BigRational::zero() }).collect();
    let mut value: BigRational = -b.iter().cloned().sum::<BigRational>();
    while let Some(enter) = (0..total).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &b[i] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            break;
        };
        let pivot = tab[r][enter].clone();
        tab[r].iter_mut().for_each(|x| *x = &*x / &pivot);
        b[r] = &b[r] / &pivot;
        for i in 0..m {
            if i != r && !tab[i][enter].is_zero() {
                let factor = tab[i][enter].clone();
                for j in 0..total {
                    let delta = &factor * &tab[r][j];
                    tab[i][j] -= delta;
                }
                b[i] = &b[i] - &factor * &b[r];
            }
        }
        let factor = cost[enter].clone();
        for j in 0..total {
            cost[j] = &cost[j] - &factor * &tab[r][j];
        }
        value = &value - &factor * &b[r];
        basis[r] = enter;
    }
    value.is_zero()
}
