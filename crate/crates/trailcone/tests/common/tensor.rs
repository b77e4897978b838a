//! `sl(2)` oracle: expand nested vectors in the plain tensor basis of Verma
//! modules, apply `f^b`, and read off nested-basis coordinates by
//! unitriangular elimination.

use std::collections::BTreeMap;

/// Keys are exponent tuples `(p_1, …, p_n)`; ordering compares `p_n` first.
type Vector = BTreeMap<Vec<i64>, i128>;

fn key(p: &[i64]) -> Vec<i64> {
    p.iter().rev().copied().collect()
}

fn unkey(k: &[i64]) -> Vec<i64> {
    k.iter().rev().copied().collect()
}

fn raise(v: &Vector, active: usize) -> Vector {
    let mut out = Vector::new();
    for (k, &c) in v {
        let p = unkey(k);
        for i in 0..active {
            let mut q = p.clone();
            q[i] += 1;
            *out.entry(key(&q)).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn lower(v: &Vector, a: &[i64]) -> Vector {
    let mut out = Vector::new();
    for (k, &c) in v {
        let p = unkey(k);
        for i in 0..p.len() {
            let factor = p[i] * (a[i] - p[i] + 1);
            if factor != 0 {
                let mut q = p.clone();
                q[i] -= 1;
                *out.entry(key(&q)).or_insert(0) += c * factor as i128;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `v_k` in the plain tensor basis.
pub fn nested(k: &[i64]) -> Vector {
    let mut v = Vector::from([(vec![0; k.len()], 1i128)]);
    for (i, &ki) in k.iter().enumerate() {
        for _ in 0..ki {
            v = raise(&v, i + 1);
        }
    }
    v
}

/// Coordinates of `v` in the nested basis.
pub fn decompose(mut v: Vector) -> BTreeMap<Vec<i64>, i128> {
    let mut out = BTreeMap::new();
    while let Some((top, &c)) = v.iter().next_back() {
        let l = unkey(top);
        for (k, x) in nested(&l) {
            *v.entry(k).or_insert(0) -= c * x;
        }
        v.retain(|_, x| *x != 0);
        out.insert(l, c);
    }
    out
}

/// For every `b ≤ |k|`, the nested coordinates of `f^b v_k`.
pub fn lowering_table(a: &[i64], k: &[i64]) -> Vec<BTreeMap<Vec<i64>, i128>> {
    let total: i64 = k.iter().sum();
    let mut v = nested(k);
    let mut out = Vec::new();
    for _ in 0..=total {
        out.push(decompose(v.clone()));
        v = lower(&v, a);
    }
    out
}
