//! Crystal operators on `B_J = ℕ^{|J|}` and generation of `B_J(∞)`.
//!
//! `B_J` is read as the tensor product of elementary crystals `B_{i_j}`,
//! one per position of `J`. For a node `i` and each position `k` carrying
//! `i`, the signature entry is
//!
//! ```text
//! σ_k(b) = m_k + Σ_{j>k} p(i_j, i) m_j
//! ```
//!
//! where the pairing `p` is `α^∨_{i_j}(α_i)` under [`Convention::Dual`] (so
//! that `σ_k = r_i^k(b)`, the Kashiwara function) and `α^∨_i(α_{i_j})` under
//! [`Convention::Straight`]. With `σ* = max_k σ_k`:
//!
//! * `f̃_i` adds one at the leftmost `k` attaining `σ*`, provided `σ* ≥ 0`.
//!   When every `σ_k` is negative the maximum is attained past the end of
//!   `J`; the result is then flagged as escaping and `b` is returned as is.
//! * `ẽ_i` subtracts one at the rightmost `k` attaining `σ*` when `σ* > 0`,
//!   and is undefined otherwise. On points outside `B_J(∞)` that position
//!   may hold 0; `ẽ_i` is then undefined as well.

use crate::cartan::{CartanData, WordJ};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Dual,
    Straight,
}

/// A point of `B_J`, stored densely; `coords[j−1] = m_j(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BJElement {
    coords: Vec<u64>,
}

impl BJElement {
    /// `b_∞` for a word of length `m`.
    pub fn zero(m: usize) -> Self {
        BJElement { coords: vec![0; m] }
    }

    pub fn from_coords(coords: Vec<u64>) -> Self {
        BJElement { coords }
    }

    /// `m_j(b)` for 1-based `j`; zero past the end.
    pub fn get(&self, j: usize) -> u64 {
        self.coords.get(j - 1).copied().unwrap_or(0)
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Coordinates padded or truncated to length `m`.
    pub fn dense(&self, m: usize) -> Vec<u64> {
        let mut out = self.coords.clone();
        out.resize(m, 0);
        out
    }

    /// `Σ_j m_j(b)`, the number of `f̃` applications from `b_∞`.
    pub fn depth(&self) -> u64 {
        self.coords.iter().sum()
    }

    /// Finite-support view keyed by position.
    pub fn support(&self) -> BTreeMap<usize, u64> {
        self.coords.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j + 1, x)).collect()
    }
}

/// Outcome of `f̃_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lowered {
    pub element: BJElement,
    /// Set when `f̃_i b` leaves `B_J`.
    pub escaped: bool,
}

fn pairing(cartan: &CartanData, convention: Convention, letter: usize, i: usize) -> i64 {
    match convention {
        Convention::Dual => cartan.entry(letter, i),
        Convention::Straight => cartan.entry(i, letter),
    }
}

/// `(k, σ_k(b))` for every position `k` carrying `i`, in increasing `k`.
pub fn signature(cartan: &CartanData, word: &WordJ, convention: Convention, b: &BJElement, i: usize) -> Vec<(usize, i64)> {
    let m = word.len();
    let mut tail = 0i64;
    let mut out = Vec::new();
    for k in (1..=m).rev() {
        let letter = word.letter(k);
        if letter == i {
            out.push((k, b.get(k) as i64 + tail));
        }
        tail += pairing(cartan, convention, letter, i) * b.get(k) as i64;
    }
    out.reverse();
    out
}

/// `ε_i(b) = max(0, max_k σ_k(b))`.
pub fn epsilon(cartan: &CartanData, word: &WordJ, convention: Convention, b: &BJElement, i: usize) -> i64 {
    signature(cartan, word, convention, b, i).into_iter().map(|(_, x)| x).max().unwrap_or(0).max(0)
}

pub fn crystal_f(cartan: &CartanData, word: &WordJ, convention: Convention, b: &BJElement, i: usize) -> Lowered {
    let sig = signature(cartan, word, convention, b, i);
    let best = sig.iter().map(|&(_, x)| x).max();
    match best {
        Some(top) if top >= 0 => {
            let k = sig.iter().find(|&&(_, x)| x == top).expect("maximum is attained").0;
            let mut coords = b.dense(word.len());
            coords[k - 1] += 1;
            Lowered { element: BJElement { coords }, escaped: false }
        }
        _ => Lowered { element: b.clone(), escaped: true },
    }
}

pub fn crystal_e(cartan: &CartanData, word: &WordJ, convention: Convention, b: &BJElement, i: usize) -> Option<BJElement> {
    let sig = signature(cartan, word, convention, b, i);
    let top = sig.iter().map(|&(_, x)| x).max()?;
    if top <= 0 {
        return None;
    }
    let k = sig.iter().rev().find(|&&(_, x)| x == top).expect("maximum is attained").0;
    let mut coords = b.dense(word.len());
    coords[k - 1] = coords[k - 1].checked_sub(1)?;
    Some(BJElement { coords })
}

/// Elements of `B_J(∞)` reachable from `b_∞` by at most `depth` lowering
/// steps, together with the number of escaping steps met on the way.
#[derive(Debug, Clone, Serialize)]
pub struct Generated {
    pub depth: usize,
    pub elements: BTreeSet<BJElement>,
    pub escapes: usize,
}

impl Generated {
    /// Number of elements with `depth()` equal to `d`.
    pub fn count_at(&self, d: u64) -> usize {
        self.elements.iter().filter(|b| b.depth() == d).count()
    }
}

pub fn generate_binf(cartan: &CartanData, word: &WordJ, convention: Convention, depth: usize) -> Generated {
    let mut elements = BTreeSet::from([BJElement::zero(word.len())]);
    let mut frontier = vec![BJElement::zero(word.len())];
    let mut escapes = 0;
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for b in &frontier {
            for i in 0..cartan.rank() {
                let lowered = crystal_f(cartan, word, convention, b, i);
                if lowered.escaped {
                    escapes += 1;
                } else if elements.insert(lowered.element.clone()) {
                    next.insert(lowered.element);
                }
            }
        }
        frontier = next.into_iter().collect();
    }
    Generated { depth, elements, escapes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{fixtures, validate_gcm};

    fn a2() -> (CartanData, WordJ) {
        let cartan = validate_gcm(&fixtures::a(2)).unwrap();
        let word = WordJ::new(&cartan, vec![0, 1, 0]).unwrap();
        (cartan, word)
    }

    #[test]
    fn first_step_from_zero() {
        let (cartan, word) = a2();
        let b = crystal_f(&cartan, &word, Convention::Dual, &BJElement::zero(3), 0);
        assert!(!b.escaped);
        assert_eq!(b.element.coords(), &[1, 0, 0]);
        assert_eq!(crystal_e(&cartan, &word, Convention::Dual, &BJElement::zero(3), 0), None);
    }

    #[test]
    fn raising_undoes_lowering() {
        let (cartan, word) = a2();
        let gen = generate_binf(&cartan, &word, Convention::Dual, 5);
        for b in &gen.elements {
            for i in 0..2 {
                let f = crystal_f(&cartan, &word, Convention::Dual, b, i);
                assert_eq!(crystal_e(&cartan, &word, Convention::Dual, &f.element, i).as_ref(), Some(b));
            }
        }
    }

    #[test]
    fn depth_one_has_one_element_per_node() {
        let (cartan, word) = a2();
        let gen = generate_binf(&cartan, &word, Convention::Dual, 1);
        assert_eq!(gen.elements.len(), 3);
        assert_eq!(gen.escapes, 0);
    }

    proptest::proptest! {
        #[test]
        fn raising_undoes_lowering_anywhere(coords in proptest::collection::vec(0u64..5, 6), i in 0usize..2, straight: bool) {
            let cartan = validate_gcm(&fixtures::g2()).unwrap();
            let word = WordJ::new(&cartan, vec![0, 1, 0, 1, 0, 1]).unwrap();
            let convention = if straight { Convention::Straight } else { Convention::Dual };
            let b = BJElement::from_coords(coords);
            let lowered = crystal_f(&cartan, &word, convention, &b, i);
            if !lowered.escaped {
                proptest::prop_assert_eq!(lowered.element.depth(), b.depth() + 1);
                proptest::prop_assert_eq!(crystal_e(&cartan, &word, convention, &lowered.element, i), Some(b.clone()));
            }
            if let Some(up) = crystal_e(&cartan, &word, convention, &b, i) {
                proptest::prop_assert_eq!(crystal_f(&cartan, &word, convention, &up, i).element, b);
            }
        }
    }
}
