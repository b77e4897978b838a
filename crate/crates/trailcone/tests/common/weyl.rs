//! Brute-force Weyl group data via the orbit of `ρ`: `w ↦ wρ` is injective,
//! and the length of `w` is the breadth-first distance of `wρ` from `ρ`.

use std::collections::{BTreeMap, VecDeque};

fn reflect(gcm: &[Vec<i64>], i: usize, w: &[i64]) -> Vec<i64> {
    // s_i λ = λ − λ_i α_i, with α_i the i-th column of the Kac matrix.
    (0..w.len()).map(|r| w[r] - w[i] * gcm[r][i]).collect()
}

pub fn orbit_lengths(gcm: &[Vec<i64>]) -> BTreeMap<Vec<i64>, usize> {
    let rho = vec![1i64; gcm.len()];
    let mut dist = BTreeMap::from([(rho.clone(), 0usize)]);
    let mut queue = VecDeque::from([rho]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for i in 0..gcm.len() {
            let next = reflect(gcm, i, &w);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Whether every prefix of `word` (read `i_1` first) has length equal to
/// its number of letters.
pub fn is_reduced(gcm: &[Vec<i64>], word: &[usize]) -> bool {
    let lengths = orbit_lengths(gcm);
    let mut w = vec![1i64; gcm.len()];
    word.iter().enumerate().all(|(j, &i)| {
        w = reflect(gcm, i, &w);
        lengths[&w] == j + 1
    })
}

pub fn group_order(gcm: &[Vec<i64>]) -> usize {
    orbit_lengths(gcm).len()
}

/// The orbit of a weight, by closure under simple reflections.
pub fn orbit(gcm: &[Vec<i64>], lambda: &[i64]) -> Vec<Vec<i64>> {
    let mut seen = std::collections::BTreeSet::from([lambda.to_vec()]);
    let mut queue = VecDeque::from([lambda.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..gcm.len() {
            let next = reflect(gcm, i, &w);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}
