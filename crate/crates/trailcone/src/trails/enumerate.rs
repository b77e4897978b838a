//! Depth-first enumeration of all trails against the module, and adjunction
//! of faces.

use super::{face_weights, LinearFunctionBJ, Trail, TrailError, TrailFrame};
use crate::rep::{LowestWeightModule, ModuleVector};

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerateOptions {
    /// Abort with `DepthExhausted` after visiting this many search nodes.
    pub max_nodes: Option<usize>,
}

/// All trails for `(J, t)`, sorted by exponent tuple.
#[derive(Debug, Clone)]
pub struct TrailSet {
    pub frame: TrailFrame,
    pub trails: Vec<Trail>,
}

impl TrailSet {
    /// Trails trivializing at `w_j`, i.e. with `φ ≤ j`.
    pub fn layer(&self, j: usize) -> Vec<&Trail> {
        self.trails.iter().filter(|k| k.phi <= j).collect()
    }

    pub fn functions(&self) -> Vec<LinearFunctionBJ> {
        self.trails.iter().map(|k| self.frame.trail_function(k)).collect()
    }

    /// Sorted functions of the trails with `φ ≤ j`.
    pub fn layer_functions(&self, j: usize) -> Vec<LinearFunctionBJ> {
        let mut out: Vec<_> = self.layer(j).into_iter().map(|k| self.frame.trail_function(k)).collect();
        out.sort();
        out
    }

    /// Number of trails per trivialization index `φ`.
    pub fn counts_by_phi(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for k in &self.trails {
            *counts.entry(k.phi).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }
}

pub fn enumerate_trails(module: &LowestWeightModule, frame: &TrailFrame) -> Result<TrailSet, TrailError> {
    enumerate_trails_with(module, frame, EnumerateOptions::default())
}

/// Searches exponent tuples position by position. At position `j` the
/// exponent ranges from the lower bound forced by (P) to the length of the
/// `e_{i_j}`-string through the current vector, and never lets a root
/// coordinate overshoot that of the final weight `−w_m ϖ_t`.
pub fn enumerate_trails_with(module: &LowestWeightModule, frame: &TrailFrame, options: EnumerateOptions) -> Result<TrailSet, TrailError> {
    let m = frame.m();
    let target = frame.root_prefix(&frame.driving_trail().exps)[m].clone();
    let mut state = Search { module, frame, options, visited: 0, target, found: Vec::new() };
    let start = frame.start_vector(module)?;
    let mut exps = Vec::with_capacity(m);
    let mut roots = vec![0i64; frame.cartan().rank()];
    state.descend(1, &start, &mut exps, &mut roots)?;
    let mut trails: Vec<Trail> = state.found.into_iter().map(|e| frame.trail_from_exps(&e)).collect::<Result<_, _>>()?;
    trails.sort_by(|x, y| x.exps.cmp(&y.exps));
    Ok(TrailSet { frame: frame.clone(), trails })
}

struct Search<'a> {
    module: &'a LowestWeightModule,
    frame: &'a TrailFrame,
    options: EnumerateOptions,
    visited: usize,
    target: Vec<i64>,
    found: Vec<Vec<u64>>,
}

impl Search<'_> {
    fn descend(&mut self, j: usize, v: &ModuleVector, exps: &mut Vec<u64>, roots: &mut [i64]) -> Result<(), TrailError> {
        self.visited += 1;
        if let Some(limit) = self.options.max_nodes {
            if self.visited > limit {
                return Err(TrailError::DepthExhausted(limit));
            }
        }
        let m = self.frame.m();
        if j > m {
            if v.weight.as_ref() == Some(self.frame.extremal(m)) {
                self.found.push(exps.clone());
            }
            return Ok(());
        }
        let letter = self.frame.word().letter(j);
        let lower = (self.frame.driving_root(j + 1)[letter] - roots[letter]).max(0) as u64;
        let upper = (self.target[letter] - roots[letter]).max(-1);
        let mut current = v.clone();
        let mut n: u64 = 0;
        while (n as i64) <= upper {
            if n >= lower {
                exps.push(n);
                roots[letter] += n as i64;
                self.descend(j + 1, &current, exps, roots)?;
                roots[letter] -= n as i64;
                exps.pop();
            }
            current = self.module.raise(letter, &current);
            if current.is_zero() {
                break;
            }
            n += 1;
        }
        Ok(())
    }
}

/// The trail `K + c·F_s^k` (`c` may be negative), if every weight shift is
/// consistent with the axioms and every vector along it is non-zero.
pub fn try_adjoin_face(
    module: &LowestWeightModule,
    frame: &TrailFrame,
    trail: &Trail,
    s: usize,
    k: usize,
    copies: i64,
) -> Result<Option<Trail>, TrailError> {
    let lower = frame.word().position(s, k - 1).ok_or(TrailError::PositionMissing { s, k: k - 1 })?;
    let upper = frame.word().position(s, k).ok_or(TrailError::PositionMissing { s, k })?;
    face_weights(frame.cartan(), frame.word(), s, k)?;
    let mut exps: Vec<i64> = trail.exps.iter().map(|&x| x as i64).collect();
    exps[lower - 1] += copies;
    exps[upper - 1] -= copies;
    if exps.iter().any(|&x| x < 0) {
        return Ok(None);
    }
    let exps: Vec<u64> = exps.into_iter().map(|x| x as u64).collect();
    let Ok(candidate) = frame.trail_from_exps(&exps) else {
        return Ok(None);
    };
    Ok(frame.realize(module, &candidate).is_ok().then_some(candidate))
}
