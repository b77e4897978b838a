//! Weight multiplicities of `V(λ)` by Freudenthal's recursion over the
//! rationals, with its own root system and invariant form.

use num_rational::Rational64;
use std::collections::{BTreeMap, BTreeSet};

/// `(α_i, α_i)` making `(α_i, α_j) = A[i][j] (α_i, α_i) / 2` symmetric.
fn root_lengths(gcm: &[Vec<i64>]) -> Vec<Rational64> {
    let r = gcm.len();
    let mut len: Vec<Option<Rational64>> = vec![None; r];
    for start in 0..r {
        if len[start].is_some() {
            continue;
        }
        len[start] = Some(Rational64::from_integer(2));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..r {
                if gcm[i][j] != 0 && len[j].is_none() {
                    // A[i][j] ε_i = A[j][i] ε_j
                    len[j] = Some(len[i].unwrap() * Rational64::new(gcm[i][j], gcm[j][i]));
                    stack.push(j);
                }
            }
        }
    }
    len.into_iter().map(Option::unwrap).collect()
}

fn form(gcm: &[Vec<i64>], eps: &[Rational64], x: &[i64], y: &[i64]) -> Rational64 {
    let mut acc = Rational64::from_integer(0);
    for i in 0..gcm.len() {
        for j in 0..gcm.len() {
            acc += Rational64::from_integer(x[i] * y[j] * gcm[i][j]) * eps[i] / 2;
        }
    }
    acc
}

/// Positive roots in simple-root coordinates, by root strings.
pub fn positive_roots(gcm: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = gcm.len();
    let simple: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut roots: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier = simple;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for root in &frontier {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| root[j] * gcm[i][j]).sum();
                let mut p = 0;
                let mut down = root.clone();
                loop {
                    down[i] -= 1;
                    if roots.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = root.clone();
                    up[i] += 1;
                    if roots.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        frontier = next;
    }
    roots.into_iter().collect()
}

/// Multiplicities of `λ − β` keyed by `β` in simple-root coordinates.
pub fn multiplicities(gcm: &[Vec<i64>], lambda: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let r = gcm.len();
    let eps = root_lengths(gcm);
    let roots = positive_roots(gcm);
    // (λ, α_j) and (ρ, α_j) from pairings.
    let lam_dot = |beta: &[i64]| -> Rational64 { (0..r).map(|j| Rational64::from_integer(lambda[j] * beta[j]) * eps[j] / 2).sum() };
    let rho_dot = |beta: &[i64]| -> Rational64 { (0..r).map(|j| Rational64::from_integer(beta[j]) * eps[j] / 2).sum() };
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::from([(vec![0; r], 1)]);
    let mut level = vec![vec![0i64; r]];
    loop {
        let mut candidates = BTreeSet::new();
        for beta in &level {
            for i in 0..r {
                let mut b = beta.clone();
                b[i] += 1;
                candidates.insert(b);
            }
        }
        let mut next = Vec::new();
        for beta in candidates {
            // |λ+ρ|² − |λ−β+ρ|² = 2(λ+ρ, β) − (β, β)
            let denom = (lam_dot(&beta) + rho_dot(&beta)) * 2 - form(gcm, &eps, &beta, &beta);
            let mut num = Rational64::from_integer(0);
            for alpha in &roots {
                let mut k = 1;
                loop {
                    let shifted: Vec<i64> = (0..r).map(|j| beta[j] - k * alpha[j]).collect();
                    if shifted.iter().any(|&x| x < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&shifted) {
                        // (λ − shifted, α)
                        let dot = lam_dot(alpha) - form(gcm, &eps, &shifted, alpha);
                        num += Rational64::from_integer(m) * dot;
                    }
                    k += 1;
                }
            }
            if denom == Rational64::from_integer(0) {
                assert_eq!(num, Rational64::from_integer(0));
                continue;
            }
            let value = num * 2 / denom;
            assert!(value.is_integer());
            let m = value.to_integer();
            if m > 0 {
                mult.insert(beta.clone(), m);
                next.push(beta);
            }
        }
        if next.is_empty() {
            return mult;
        }
        level = next;
    }
}

pub fn dimension(gcm: &[Vec<i64>], lambda: &[i64]) -> i64 {
    multiplicities(gcm, lambda).values().sum()
}
