//! Vertex enumeration of `K(c)` by solving every square subsystem of its
//! defining inequalities, written independently of the library.

use num_rational::Rational64;
use std::collections::BTreeSet;

/// Rows `(a, b)` meaning `a · x ≥ b`.
pub fn inequalities(c: &[i64]) -> Vec<(Vec<i64>, i64)> {
    let d = c.len();
    let unit = |i: usize, s: i64| {
        let mut v = vec![0; d];
        v[i] = s;
        v
    };
    let mut rows = Vec::new();
    for i in 0..d {
        rows.push((unit(i, 1), 0));
        rows.push((unit(i, -1), -c[i]));
    }
    // u_1 ≺ … ≺ u_d, ties broken by index.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| (c[i], i));
    for j in 0..d {
        let mut seg: Vec<usize> = order[..=j].to_vec();
        seg.sort();
        let theta = seg.iter().position(|&x| x == order[j]).unwrap();
        let v = |k: usize| seg[k];
        if theta + 1 < seg.len() {
            let mut a = vec![0; d];
            a[v(theta + 1)] += 1;
            a[v(theta)] -= 1;
            rows.push((a, -(c[v(theta)] - c[v(theta + 1)])));
        }
        if theta >= 1 {
            let mut a = vec![0; d];
            a[v(theta)] += 1;
            a[v(theta - 1)] -= 1;
            rows.push((a, 0));
        }
    }
    rows
}

fn solve(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<Rational64>> {
    let d = a.len();
    let mut m: Vec<Vec<Rational64>> = a
        .iter()
        .zip(b)
        .map(|(row, &r)| row.iter().map(|&x| Rational64::from_integer(x)).chain([Rational64::from_integer(r)]).collect())
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| m[r][col] != Rational64::from_integer(0))?;
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..d {
            if r != col {
                let f = m[r][col];
                if f != Rational64::from_integer(0) {
                    for k in 0..=d {
                        let delta = f * m[col][k];
                        m[r][k] -= delta;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// All vertices of `K(c)`; `None` if some vertex is not integral.
pub fn vertices(c: &[i64]) -> Option<BTreeSet<Vec<i64>>> {
    let d = c.len();
    if d == 0 {
        return Some(BTreeSet::from([vec![]]));
    }
    let rows = inequalities(c);
    let mut out = BTreeSet::new();
    for pick in subsets(rows.len(), d) {
        let a: Vec<Vec<i64>> = pick.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<i64> = pick.iter().map(|&i| rows[i].1).collect();
        let Some(x) = solve(&a, &b) else { continue };
        let feasible = rows.iter().all(|(a, b)| {
            let lhs: Rational64 = a.iter().zip(&x).map(|(&ai, xi)| Rational64::from_integer(ai) * xi).sum();
            lhs >= Rational64::from_integer(*b)
        });
        if feasible {
            if x.iter().any(|v| !v.is_integer()) {
                return None;
            }
            out.insert(x.iter().map(|v| v.to_integer()).collect());
        }
    }
    Some(out)
}

/// Every tuple with entries in `0..=max` and length `len`.
pub fn all_tuples(len: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t: Vec<i64>| (0..=max).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}
