//! Trails in `V(−ϖ_t)` relative to a finite reduced word `J`.
//!
//! A trail is stored by its weights `γ_1, …, γ_{m+1}` together with the
//! exponents `n_j`, where `γ_{j+1} = γ_j + n_j α_{i_j}`. It starts at
//! `γ_1 = −s_t ϖ_t`, stays above the driving trail `K_t^1` in the root
//! order, and from its trivialization index `φ` on follows the extremal
//! weights `−w_j ϖ_t`.

mod classes;
mod enumerate;
mod func;

pub use classes::{group_ts_classes, minimax_decompose, rigidify, Minimax, Rigidified, TsClass};
pub use enumerate::{enumerate_trails, enumerate_trails_with, try_adjoin_face, EnumerateOptions, TrailSet};
pub use func::{driving_function, face_function, face_weights, kashiwara_function, LinearFunctionBJ};

use crate::cartan::{CartanData, CartanError, Weight, WordJ};
use crate::rep::{LowestWeightModule, ModuleVector};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrailError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("node {0} does not occur in the word")]
    TNotInWord(usize),
    #[error("position ({s}, {k}) does not exist in the word")]
    PositionMissing { s: usize, k: usize },
    #[error("F_{s}^1 is the open face; use the driving trail instead")]
    OpenFaceRequest { s: usize },
    #[error("exponent list has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("axiom {axiom} fails at position {position}")]
    AxiomViolation { axiom: &'static str, position: usize },
    #[error("vector vanishes at position {0}")]
    Vanishes(usize),
    #[error("search exceeded {0} nodes")]
    DepthExhausted(usize),
    #[error("trails in one class trivialize differently: {0}")]
    MixedTrivialization(String),
    #[error("class invariant fails: {0}")]
    ClassInvariant(String),
    #[error("the class has no maximal trail")]
    NoMaximalTrail,
}

/// The data shared by all trails for fixed `(J, t)`: extremal weights and the
/// driving trail.
#[derive(Debug, Clone)]
pub struct TrailFrame {
    cartan: CartanData,
    word: WordJ,
    t: usize,
    /// `extremal[p] = −w_p ϖ_t` for `p = 0..=m`.
    extremal: Vec<Weight>,
    driving: Trail,
    /// Root coordinates of `γ_j^{K_t^1} − γ_1`, for `j = 1..=m+1`.
    driving_roots: Vec<Vec<i64>>,
}

/// A trail; `gamma[j-1] = γ_j` and `exps[j-1] = n_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Trail {
    pub t: usize,
    pub exps: Vec<u64>,
    pub gamma: Vec<Weight>,
    pub phi: usize,
}

impl Trail {
    /// `γ_j` for `j ∈ [1, m+1]`.
    pub fn gamma_at(&self, j: usize) -> &Weight {
        &self.gamma[j - 1]
    }

    /// `n_j` for `j ∈ [1, m]`.
    pub fn exp_at(&self, j: usize) -> u64 {
        self.exps[j - 1]
    }

    /// The monomial `e_{i_m}^{n_m} ⋯ e_{i_1}^{n_1}` as written.
    pub fn monomial(&self, word: &WordJ) -> Vec<(usize, u64)> {
        word.letters().iter().copied().zip(self.exps.iter().copied()).rev().collect()
    }
}

impl TrailFrame {
    pub fn new(cartan: &CartanData, word: &WordJ, t: usize) -> Result<Self, TrailError> {
        cartan.check_letter(t)?;
        let first = word.position(t, 1).ok_or(TrailError::TNotInWord(t))?;
        let rank = cartan.rank();
        let top = Weight::fundamental(rank, t);
        let extremal: Vec<Weight> = (0..=word.len()).map(|p| word.act_prefix(cartan, p, &top).neg()).collect();
        let start = cartan.reflect(t, &top).neg();
        let m = word.len();
        let mut exps = vec![0u64; m];
        let mut gamma = vec![start.clone()];
        for j in 1..=m {
            let current = gamma[j - 1].clone();
            let next = if j >= first { extremal[j].clone() } else { current.clone() };
            let diff = next.sub(&current);
            let letter = word.letter(j);
            // `diff` is a multiple of α_{i_j}; its α^∨_{i_j} pairing is 2 n_j.
            let n = diff.pairing(letter) / 2;
            debug_assert_eq!(cartan.shift(&current, letter, n), next);
            exps[j - 1] = n as u64;
            gamma.push(next);
        }
        let driving = Trail { t, exps, gamma, phi: first };
        let mut frame = TrailFrame { cartan: cartan.clone(), word: word.clone(), t, extremal, driving, driving_roots: Vec::new() };
        frame.driving_roots = frame.root_prefix(&frame.driving.exps);
        Ok(frame)
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn word(&self) -> &WordJ {
        &self.word
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.word.len()
    }

    /// `−w_p ϖ_t`.
    pub fn extremal(&self, p: usize) -> &Weight {
        &self.extremal[p]
    }

    /// `γ_1 = −s_t ϖ_t`.
    pub fn start(&self) -> &Weight {
        &self.driving.gamma[0]
    }

    /// The initial driving trail `K_t^1`.
    pub fn driving_trail(&self) -> &Trail {
        &self.driving
    }

    /// The position `(t, 1)`.
    pub fn first_t(&self) -> usize {
        self.driving.phi
    }

    /// Root coordinates of `γ_j − γ_1` for `j = 1..=m+1`.
    fn root_prefix(&self, exps: &[u64]) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.cartan.rank()]];
        for (k, &n) in exps.iter().enumerate() {
            let mut next = out[k].clone();
            next[self.word.letter(k + 1)] += n as i64;
            out.push(next);
        }
        out
    }

    pub(crate) fn driving_root(&self, j: usize) -> &[i64] {
        &self.driving_roots[j - 1]
    }

    /// Least `j` with `γ_{p+1} = −w_p ϖ_t` for every `p ≥ j`; `None` if the
    /// last weight is not extremal.
    pub fn trivialization(&self, gamma: &[Weight]) -> Option<usize> {
        let m = self.m();
        if gamma[m] != self.extremal[m] {
            return None;
        }
        let mut phi = m;
        while phi >= 1 && gamma[phi - 1] == self.extremal[phi - 1] {
            phi -= 1;
        }
        Some(phi.max(1))
    }

    /// Builds a trail from its exponents and checks (T), (B) and (P).
    pub fn trail_from_exps(&self, exps: &[u64]) -> Result<Trail, TrailError> {
        let m = self.m();
        if exps.len() != m {
            return Err(TrailError::LengthMismatch { got: exps.len(), expected: m });
        }
        let mut gamma = vec![self.start().clone()];
        for j in 1..=m {
            gamma.push(self.cartan.shift(&gamma[j - 1], self.word.letter(j), exps[j - 1] as i64));
        }
        let roots = self.root_prefix(exps);
        for j in 1..=m + 1 {
            if roots[j - 1].iter().zip(self.driving_root(j)).any(|(x, y)| x < y) {
                return Err(TrailError::AxiomViolation { axiom: "P", position: j });
            }
        }
        let phi = self.trivialization(&gamma).ok_or(TrailError::AxiomViolation { axiom: "B", position: m })?;
        Ok(Trail { t: self.t, exps: exps.to_vec(), gamma, phi })
    }

    /// The trail function: coefficient `α^∨_{i_j}((γ_j + γ_{j+1})/2) = α^∨_{i_j}(γ_j) + n_j`.
    pub fn trail_function(&self, trail: &Trail) -> LinearFunctionBJ {
        let mut f = LinearFunctionBJ::zero();
        for j in 1..=self.m() {
            let letter = self.word.letter(j);
            f.set(j, trail.gamma_at(j).pairing(letter) + trail.exp_at(j) as i64);
        }
        f
    }

    /// Recovers the exponents of the trail whose function is `f`, reading
    /// `n_j = coeff_j − α^∨_{i_j}(γ_j)` from `γ_1` onwards.
    pub fn exps_from_function(&self, f: &LinearFunctionBJ) -> Option<Vec<u64>> {
        let mut gamma = self.start().clone();
        let mut exps = Vec::with_capacity(self.m());
        for j in 1..=self.m() {
            let letter = self.word.letter(j);
            let n = f.coeff(j) - gamma.pairing(letter);
            if n < 0 {
                return None;
            }
            exps.push(n as u64);
            gamma = self.cartan.shift(&gamma, letter, n);
        }
        if f.max_support().is_some_and(|j| j > self.m()) {
            return None;
        }
        Some(exps)
    }

    /// The trail with function `f`, if `f` decodes to one satisfying the
    /// axioms (without testing realizability).
    pub fn trail_from_function(&self, f: &LinearFunctionBJ) -> Option<Trail> {
        self.exps_from_function(f).and_then(|e| self.trail_from_exps(&e).ok())
    }

    /// The vectors `v_1, …, v_{m+1}` of a trail, failing if one vanishes.
    pub fn realize(&self, module: &LowestWeightModule, trail: &Trail) -> Result<Vec<ModuleVector>, TrailError> {
        let mut out = vec![self.start_vector(module)?];
        for j in 1..=self.m() {
            let next = module.raise_power(self.word.letter(j), trail.exp_at(j), &out[j - 1]);
            if next.is_zero() {
                return Err(TrailError::Vanishes(j));
            }
            out.push(next);
        }
        Ok(out)
    }

    /// `v_1 = e_t v_{−ϖ_t}`, spanning the `−s_t ϖ_t` weight space.
    pub fn start_vector(&self, module: &LowestWeightModule) -> Result<ModuleVector, TrailError> {
        let v = module.raise(self.t, &module.lowest_vector());
        if v.is_zero() {
            return Err(TrailError::Vanishes(0));
        }
        Ok(v)
    }

    /// JSON record of one trail.
    pub fn dump(&self, trail: &Trail) -> TrailDump {
        TrailDump {
            gamma: trail.gamma.iter().map(|w| w.0.clone()).collect(),
            exps: trail.exps.clone(),
            phi: trail.phi,
            z: self.trail_function(trail).iter().collect(),
        }
    }
}

/// Serialized form `{gamma, exps, phi, z}` of a trail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TrailDump {
    pub gamma: Vec<Vec<i64>>,
    pub exps: Vec<u64>,
    pub phi: usize,
    pub z: BTreeMap<usize, i64>,
}

/// `K_t^1` for `(J, t)`.
pub fn driving_trail(cartan: &CartanData, word: &WordJ, t: usize) -> Result<Trail, TrailError> {
    Ok(TrailFrame::new(cartan, word, t)?.driving)
}
