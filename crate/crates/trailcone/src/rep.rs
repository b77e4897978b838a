//! Exact construction of the fundamental module `V(−ϖ_t)` in finite type.
//!
//! The irreducible highest-weight module `V(ϖ_t)` is grown one weight space at
//! a time. At weight `ν` the spanning candidates are the formal vectors
//! `f_i b`, with `b` running over the basis of the `ν + α_i` space. Their Gram
//! matrix under the contravariant form is computed from
//! `⟨f_i b, f_j b'⟩ = ⟨b, e_i f_j b'⟩` and `e_i f_j = f_j e_i + δ_ij h_i`. The
//! pivot candidates form the basis; the others are expressed through it.
//! Finally the Chevalley involution turns the highest-weight module into the
//! lowest-weight module, so `e_i` raises weights starting from `v_{−ϖ_t}`.

use crate::cartan::{CartanData, CartanError, Weight};
use crate::linalg::{self, rat, Matrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("Gram rank {gram} differs from raising-image rank {image} at weight {weight}")]
    RadicalRankMismatch { weight: Weight, gram: usize, image: usize },
    #[error("module check failed: {0}")]
    Inconsistent(String),
    #[error("weight {0} is not extremal: its weight space has dimension {1}")]
    NotExtremalWeight(Weight, usize),
    #[error("zero vector where a non-zero vector was required")]
    ZeroVector,
    #[error("cache i/o: {0}")]
    Cache(String),
}

/// A vector of the module, stored sparsely in the module basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    pub coords: BTreeMap<usize, BigRational>,
    pub weight: Option<Weight>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector { coords: BTreeMap::new(), weight: None }
    }

    pub fn basis(index: usize, weight: Weight) -> Self {
        ModuleVector { coords: BTreeMap::from([(index, BigRational::one())]), weight: Some(weight) }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        ModuleVector { coords: self.coords.iter().map(|(&k, v)| (k, v * factor)).collect(), weight: self.weight.clone() }
    }

    /// Adds `other` in place; both must have the same weight when non-zero.
    pub fn add_assign(&mut self, other: &ModuleVector) {
        for (&k, v) in &other.coords {
            let entry = self.coords.entry(k).or_insert_with(BigRational::zero);
            *entry += v;
            if entry.is_zero() {
                self.coords.remove(&k);
            }
        }
        if self.weight.is_none() {
            self.weight = other.weight.clone();
        }
        if self.coords.is_empty() {
            self.weight = None;
        }
    }
}

/// Column-sparse matrix: `cols[c]` lists the non-zero `(row, value)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub cols: Vec<Vec<(usize, BigRational)>>,
}

impl SparseMatrix {
    fn new(dim: usize) -> Self {
        SparseMatrix { cols: vec![Vec::new(); dim] }
    }

    fn apply(&self, v: &BTreeMap<usize, BigRational>) -> BTreeMap<usize, BigRational> {
        let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (&c, x) in v {
            for (r, y) in &self.cols[c] {
                *out.entry(*r).or_insert_with(BigRational::zero) += x * y;
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    fn dense(&self) -> Matrix {
        let n = self.cols.len();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                m[*r][c] = x.clone();
            }
        }
        m
    }

    fn negated(&self) -> Self {
        SparseMatrix { cols: self.cols.iter().map(|col| col.iter().map(|(r, x)| (*r, -x)).collect()).collect() }
    }
}

/// The lowest-weight module `V(−ϖ_t)` with exact matrices for `e_i`, `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowestWeightModule {
    cartan: CartanData,
    t: usize,
    weights: Vec<Weight>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
    lowest_index: usize,
    weight_spaces: BTreeMap<Weight, Vec<usize>>,
}

struct HighestSpace {
    basis: Vec<usize>,
    gram: Matrix,
}

/// Builds `V(−ϖ_t)` and verifies it (see module docs).
pub fn build_fundamental(cartan: &CartanData, t: usize) -> Result<LowestWeightModule, RepError> {
    cartan.require_finite()?;
    cartan.check_letter(t)?;
    let rank = cartan.rank();
    let top = Weight::fundamental(rank, t);

    let mut weights: Vec<Weight> = vec![top.clone()];
    let mut e_cols: Vec<Vec<Vec<(usize, BigRational)>>> = vec![vec![Vec::new()]; rank];
    let mut f_cols: Vec<Vec<Vec<(usize, BigRational)>>> = vec![vec![Vec::new()]; rank];
    let mut spaces: BTreeMap<Weight, HighestSpace> = BTreeMap::new();
    spaces.insert(top.clone(), HighestSpace { basis: vec![0], gram: vec![vec![BigRational::one()]] });

    let mut frontier: BTreeSet<Weight> = BTreeSet::from([top]);
    while !frontier.is_empty() {
        let targets: BTreeSet<Weight> =
            frontier.iter().flat_map(|mu| (0..rank).map(move |i| cartan.shift(mu, i, -1))).filter(|nu| !spaces.contains_key(nu)).collect();
        let mut next = BTreeSet::new();
        for nu in targets {
            // Candidates f_i b for b in the (ν + α_i)-space.
            let mut candidates: Vec<(usize, usize, Weight)> = Vec::new();
            for i in 0..rank {
                let above = cartan.shift(&nu, i, 1);
                if let Some(space) = spaces.get(&above) {
                    for &b in &space.basis {
                        candidates.push((i, b, above.clone()));
                    }
                }
            }
            if candidates.is_empty() {
                continue;
            }
            // Raising images e_j (f_i b) = f_i e_j b + δ_ij μ(h_i) b.
            let images: Vec<Vec<BTreeMap<usize, BigRational>>> = candidates
                .iter()
                .map(|(i, b, mu)| {
                    (0..rank)
                        .map(|j| {
                            let mut out = BTreeMap::new();
                            for (r, x) in &e_cols[j][*b] {
                                for (r2, y) in &f_cols[*i][*r] {
                                    *out.entry(*r2).or_insert_with(BigRational::zero) += x * y;
                                }
                            }
                            if j == *i && mu.pairing(*i) != 0 {
                                *out.entry(*b).or_insert_with(BigRational::zero) += rat(mu.pairing(*i));
                            }
                            out.retain(|_, x: &mut BigRational| !x.is_zero());
                            out
                        })
                        .collect()
                })
                .collect();
            let n = candidates.len();
            let gram: Matrix = (0..n)
                .map(|r| {
                    let (i, b, mu) = &candidates[r];
                    let space = &spaces[mu];
                    let row = space.basis.iter().position(|x| x == b).unwrap();
                    (0..n)
                        .map(|c| {
                            let mut acc = BigRational::zero();
                            for (col, val) in &images[c][*i] {
                                let pos = space.basis.iter().position(|x| x == col).unwrap();
                                acc += &space.gram[row][pos] * val;
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            // Stack all raising images into one matrix for the rank check.
            let mut row_keys: BTreeSet<(usize, usize)> = BTreeSet::new();
            for cand in &images {
                for (j, img) in cand.iter().enumerate() {
                    row_keys.extend(img.keys().map(|&r| (j, r)));
                }
            }
            let row_keys: Vec<(usize, usize)> = row_keys.into_iter().collect();
            let phi: Matrix = row_keys
                .iter()
                .map(|(j, r)| (0..n).map(|c| images[c][*j].get(r).cloned().unwrap_or_else(BigRational::zero)).collect())
                .collect();
            let pivots = linalg::rref(&mut gram.clone());
            let image_rank = if phi.is_empty() { 0 } else { linalg::rank(&phi) };
            if pivots.len() != image_rank {
                return Err(RepError::RadicalRankMismatch { weight: nu, gram: pivots.len(), image: image_rank });
            }
            if pivots.is_empty() {
                continue;
            }
            let gram_pp: Matrix = pivots.iter().map(|&r| pivots.iter().map(|&c| gram[r][c].clone()).collect()).collect();
            let first_new = weights.len();
            let basis: Vec<usize> = (0..pivots.len()).map(|k| first_new + k).collect();
            for _ in &pivots {
                weights.push(nu.clone());
                for j in 0..rank {
                    e_cols[j].push(Vec::new());
                    f_cols[j].push(Vec::new());
                }
            }
            for (k, &p) in pivots.iter().enumerate() {
                for j in 0..rank {
                    e_cols[j][first_new + k] = images[p][j].iter().map(|(r, x)| (*r, x.clone())).collect();
                }
            }
            for (c, (i, b, _)) in candidates.iter().enumerate() {
                let rhs: Vec<BigRational> = pivots.iter().map(|&r| gram[r][c].clone()).collect();
                let coords =
                    linalg::solve(&gram_pp, &rhs).ok_or_else(|| RepError::Inconsistent(format!("singular pivot Gram block at {nu}")))?;
                // The expressed vector must have the same raising images.
                for j in 0..rank {
                    let mut combo: BTreeMap<usize, BigRational> = BTreeMap::new();
                    for (k, &p) in pivots.iter().enumerate() {
                        for (r, x) in &images[p][j] {
                            *combo.entry(*r).or_insert_with(BigRational::zero) += &coords[k] * x;
                        }
                    }
                    combo.retain(|_, x| !x.is_zero());
                    if combo != images[c][j] {
                        return Err(RepError::Inconsistent(format!("quotient map disagrees with e_{j} at {nu}")));
                    }
                }
                f_cols[*i][*b] = coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (first_new + k, x)).collect();
            }
            spaces.insert(nu.clone(), HighestSpace { basis, gram: gram_pp });
            next.insert(nu);
        }
        frontier = next;
    }

    let dim = weights.len();
    let to_sparse = |cols: Vec<Vec<(usize, BigRational)>>| {
        let mut m = SparseMatrix::new(dim);
        m.cols = cols;
        m
    };
    let e_high: Vec<SparseMatrix> = e_cols.into_iter().map(to_sparse).collect();
    let f_high: Vec<SparseMatrix> = f_cols.into_iter().map(to_sparse).collect();

    // Chevalley involution: e ↦ −f, f ↦ −e, weights negated.
    let low_weights: Vec<Weight> = weights.iter().map(Weight::neg).collect();
    let mut weight_spaces: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (k, w) in low_weights.iter().enumerate() {
        weight_spaces.entry(w.clone()).or_default().push(k);
    }
    let module = LowestWeightModule {
        cartan: cartan.clone(),
        t,
        weights: low_weights,
        e: f_high.iter().map(SparseMatrix::negated).collect(),
        f: e_high.iter().map(SparseMatrix::negated).collect(),
        lowest_index: 0,
        weight_spaces,
    };
    module.verify()?;
    Ok(module)
}

impl LowestWeightModule {
    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_of(&self, index: usize) -> &Weight {
        &self.weights[index]
    }

    pub fn weight_spaces(&self) -> &BTreeMap<Weight, Vec<usize>> {
        &self.weight_spaces
    }

    pub fn multiplicity(&self, weight: &Weight) -> usize {
        self.weight_spaces.get(weight).map_or(0, Vec::len)
    }

    pub fn lowest_index(&self) -> usize {
        self.lowest_index
    }

    /// `v_{−ϖ_t}`.
    pub fn lowest_vector(&self) -> ModuleVector {
        ModuleVector::basis(self.lowest_index, self.weights[self.lowest_index].clone())
    }

    fn shifted_weight(&self, v: &ModuleVector, i: usize, n: i64) -> Option<Weight> {
        v.weight.as_ref().map(|w| self.cartan.shift(w, i, n))
    }

    /// `e_i v`.
    pub fn raise(&self, i: usize, v: &ModuleVector) -> ModuleVector {
        let coords = self.e[i].apply(&v.coords);
        let weight = if coords.is_empty() { None } else { self.shifted_weight(v, i, 1) };
        ModuleVector { coords, weight }
    }

    /// `f_i v`.
    pub fn lower(&self, i: usize, v: &ModuleVector) -> ModuleVector {
        let coords = self.f[i].apply(&v.coords);
        let weight = if coords.is_empty() { None } else { self.shifted_weight(v, i, -1) };
        ModuleVector { coords, weight }
    }

    /// `e_i^n v`.
    pub fn raise_power(&self, i: usize, n: u64, v: &ModuleVector) -> ModuleVector {
        let mut out = v.clone();
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = self.raise(i, &out);
        }
        out
    }

    /// Applies the monomial `e_{i_1}^{p_1} ⋯ e_{i_r}^{p_r}` to `v`, where
    /// `exps = [(i_1, p_1), …, (i_r, p_r)]` is the monomial as written; the
    /// rightmost factor acts first.
    pub fn apply_raising_monomial(&self, exps: &[(usize, u64)], v: &ModuleVector) -> ModuleVector {
        exps.iter().rev().fold(v.clone(), |acc, &(i, p)| self.raise_power(i, p, &acc))
    }

    /// Largest `n` with `e_i^n v ≠ 0`.
    pub fn string_length(&self, i: usize, v: &ModuleVector) -> u64 {
        let mut n = 0;
        let mut cur = self.raise(i, v);
        while !cur.is_zero() {
            n += 1;
            cur = self.raise(i, &cur);
        }
        n
    }

    /// The extremal vector of weight `−w ϖ_t` for `w = s_{i_r} ⋯ s_{i_1}`,
    /// obtained by maximal raisings along `word` (letter `i_1` first) from
    /// `v_{−ϖ_t}`. The normalization is the product of these raisings.
    pub fn extremal_vector(&self, word: &[usize]) -> Result<ModuleVector, RepError> {
        let mut v = self.lowest_vector();
        for &i in word {
            self.cartan.check_letter(i)?;
            let weight = v.weight.clone().ok_or(RepError::ZeroVector)?;
            let power = (-weight.pairing(i)).max(0) as u64;
            v = self.raise_power(i, power, &v);
        }
        let weight = v.weight.clone().ok_or(RepError::ZeroVector)?;
        let expected = crate::cartan::weyl_act(&self.cartan, word, &Weight::fundamental(self.cartan.rank(), self.t))?.neg();
        if weight != expected {
            return Err(RepError::Inconsistent(format!("extremal raising reached {weight}, expected {expected}")));
        }
        let mult = self.multiplicity(&weight);
        if mult != 1 {
            return Err(RepError::NotExtremalWeight(weight, mult));
        }
        Ok(v)
    }

    /// Basis-level checks run once after construction.
    fn verify(&self) -> Result<(), RepError> {
        let rank = self.cartan.rank();
        let expected = self.cartan.weyl_dimension(&Weight::fundamental(rank, self.t))?;
        if BigInt::from(self.dim()) != expected {
            return Err(RepError::Inconsistent(format!("dimension {} but Weyl formula gives {expected}", self.dim())));
        }
        for i in 0..rank {
            if !self.lower(i, &self.lowest_vector()).is_zero() {
                return Err(RepError::Inconsistent(format!("f_{i} does not kill the lowest vector")));
            }
            for (k, w) in self.weights.iter().enumerate() {
                let b = ModuleVector::basis(k, w.clone());
                let mut commutator = self.raise(i, &self.lower(i, &b));
                commutator.add_assign(&self.lower(i, &self.raise(i, &b)).scale(&rat(-1)));
                if commutator != b.scale(&rat(w.pairing(i))) {
                    return Err(RepError::Inconsistent(format!("[e_{i}, f_{i}] is not α^∨(γ) on basis vector {k}")));
                }
                for j in 0..rank {
                    let moved = self.raise(i, &b);
                    if let (Some(mw), false) = (&moved.weight, moved.is_zero()) {
                        if *mw != self.cartan.shift(w, i, 1) || moved.coords.keys().any(|&r| self.weights[r] != *mw) {
                            return Err(RepError::Inconsistent(format!("e_{i} does not respect the grading at {k}")));
                        }
                    }
                    if i != j {
                        let mut cross = self.raise(i, &self.lower(j, &b));
                        cross.add_assign(&self.lower(j, &self.raise(i, &b)).scale(&rat(-1)));
                        if !cross.is_zero() {
                            return Err(RepError::Inconsistent(format!("[e_{i}, f_{j}] does not vanish")));
                        }
                    }
                }
            }
        }
        self.verify_serre()
    }

    fn verify_serre(&self) -> Result<(), RepError> {
        let rank = self.cartan.rank();
        let dense: Vec<Matrix> = self.e.iter().map(SparseMatrix::dense).collect();
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let top = (1 - self.cartan.entry(i, j)) as usize;
                let mut powers = vec![identity(self.dim())];
                for p in 1..=top {
                    powers.push(linalg::mat_mul(&powers[p - 1], &dense[i]));
                }
                let mut total = vec![vec![BigRational::zero(); self.dim()]; self.dim()];
                for k in 0..=top {
                    let term = linalg::mat_mul(&linalg::mat_mul(&powers[top - k], &dense[j]), &powers[k]);
                    let coeff = rat(crate::sl2::binomial(top as i64, k as i64).try_into().unwrap_or(i64::MAX));
                    let coeff = if k % 2 == 0 { coeff } else { -coeff };
                    for (r, row) in term.iter().enumerate() {
                        for (c, x) in row.iter().enumerate() {
                            if !x.is_zero() {
                                total[r][c] += &coeff * x;
                            }
                        }
                    }
                }
                if total.iter().flatten().any(|x| !x.is_zero()) {
                    return Err(RepError::Inconsistent(format!("Serre relation fails for ({i},{j})")));
                }
            }
        }
        Ok(())
    }
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|r| (0..n).map(|c| if r == c { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}

/// Returns `λ` with `u = λ v`, or `None` when the two are not proportional.
pub fn proportionality(u: &ModuleVector, v: &ModuleVector) -> Result<Option<BigRational>, RepError> {
    if u.is_zero() || v.is_zero() {
        return Err(RepError::ZeroVector);
    }
    if u.coords.len() != v.coords.len() || u.coords.keys().ne(v.coords.keys()) {
        return Ok(None);
    }
    let (k0, v0) = v.coords.iter().next().unwrap();
    let ratio = &u.coords[k0] / v0;
    let proportional = v.coords.iter().all(|(k, x)| u.coords[k] == x * &ratio);
    Ok(proportional.then_some(ratio))
}

#[derive(Serialize, Deserialize)]
struct CachedModule {
    gcm: Vec<Vec<i64>>,
    t: usize,
    weights: Vec<Weight>,
    /// Per simple index: entries `[row, col, numerator, denominator]`.
    e: Vec<Vec<(usize, usize, String, String)>>,
    f: Vec<Vec<(usize, usize, String, String)>>,
}

fn encode(m: &SparseMatrix) -> Vec<(usize, usize, String, String)> {
    let mut out = Vec::new();
    for (c, col) in m.cols.iter().enumerate() {
        for (r, x) in col {
            out.push((*r, c, x.numer().to_string(), x.denom().to_string()));
        }
    }
    out
}

fn decode(entries: &[(usize, usize, String, String)], dim: usize) -> Result<SparseMatrix, RepError> {
    let mut m = SparseMatrix::new(dim);
    for (r, c, num, den) in entries {
        let parse = |s: &str| s.parse::<BigInt>().map_err(|e| RepError::Cache(e.to_string()));
        if *r >= dim || *c >= dim {
            return Err(RepError::Cache("matrix index out of range".into()));
        }
        m.cols[*c].push((*r, BigRational::new(parse(num)?, parse(den)?)));
    }
    Ok(m)
}

/// Cache file name for a `(gcm, t)` pair.
pub fn cache_key(cartan: &CartanData, t: usize) -> String {
    let mut hasher = Sha256::new();
    hasher.update(serde_json::to_vec(cartan.gcm()).unwrap_or_default());
    hasher.update(t.to_le_bytes());
    format!("module-{}.json", &hex::encode(hasher.finalize())[..16])
}

impl LowestWeightModule {
    pub fn save(&self, dir: &Path) -> Result<PathBuf, RepError> {
        std::fs::create_dir_all(dir).map_err(|e| RepError::Cache(e.to_string()))?;
        let path = dir.join(cache_key(&self.cartan, self.t));
        let cached = CachedModule {
            gcm: self.cartan.gcm().to_vec(),
            t: self.t,
            weights: self.weights.clone(),
            e: self.e.iter().map(encode).collect(),
            f: self.f.iter().map(encode).collect(),
        };
        let text = serde_json::to_string(&cached).map_err(|e| RepError::Cache(e.to_string()))?;
        std::fs::write(&path, text).map_err(|e| RepError::Cache(e.to_string()))?;
        Ok(path)
    }

    /// Loads a cached module and re-runs the construction checks on it.
    pub fn load(dir: &Path, cartan: &CartanData, t: usize) -> Result<Option<Self>, RepError> {
        let path = dir.join(cache_key(cartan, t));
        if !path.exists() {
            return Ok(None);
        }
        let text = std::fs::read_to_string(&path).map_err(|e| RepError::Cache(e.to_string()))?;
        let cached: CachedModule = serde_json::from_str(&text).map_err(|e| RepError::Cache(e.to_string()))?;
        if cached.gcm != cartan.gcm() || cached.t != t {
            return Err(RepError::Cache(format!("{} holds a different module", path.display())));
        }
        let dim = cached.weights.len();
        let mut weight_spaces: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (k, w) in cached.weights.iter().enumerate() {
            weight_spaces.entry(w.clone()).or_default().push(k);
        }
        let module = LowestWeightModule {
            cartan: cartan.clone(),
            t,
            weights: cached.weights,
            e: cached.e.iter().map(|m| decode(m, dim)).collect::<Result<_, _>>()?,
            f: cached.f.iter().map(|m| decode(m, dim)).collect::<Result<_, _>>()?,
            lowest_index: 0,
            weight_spaces,
        };
        module.verify()?;
        Ok(Some(module))
    }

    /// Loads from `dir` when possible, otherwise builds and stores.
    pub fn load_or_build(dir: Option<&Path>, cartan: &CartanData, t: usize) -> Result<Self, RepError> {
        if let Some(dir) = dir {
            if let Some(m) = Self::load(dir, cartan, t)? {
                return Ok(m);
            }
            let m = build_fundamental(cartan, t)?;
            m.save(dir)?;
            return Ok(m);
        }
        build_fundamental(cartan, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{fixtures, validate_gcm};

    fn module(m: Vec<Vec<i64>>, t: usize) -> LowestWeightModule {
        build_fundamental(&validate_gcm(&m).unwrap(), t).unwrap()
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(module(fixtures::b(2), 0).dim(), 5);
        assert_eq!(module(fixtures::b(2), 1).dim(), 4);
        assert_eq!(module(fixtures::a(2), 0).dim(), 3);
        assert_eq!(module(fixtures::a(2), 1).dim(), 3);
        assert_eq!(module(fixtures::g2(), 1).dim(), 7);
    }

    #[test]
    fn a2_string_bound() {
        let m = module(fixtures::a(2), 0);
        let low = m.lowest_vector();
        assert!(m.raise_power(0, 2, &low).is_zero());
        assert!(!m.raise_power(0, 1, &low).is_zero());
        assert_eq!(m.apply_raising_monomial(&[], &low), low);
    }

    #[test]
    fn b2_strings_through_zero_weight() {
        let cartan = validate_gcm(&fixtures::b(2)).unwrap();
        let m = build_fundamental(&cartan, 0).unwrap();
        let start = m.extremal_vector(&[0]).unwrap();
        let bound = Weight::fundamental(2, 0).sub(&cartan.simple_root(0)).pairing(1);
        assert_eq!(bound, 2);
        for n in 0..=4u64 {
            let v = m.apply_raising_monomial(&[(1, n)], &start);
            assert_eq!(!v.is_zero(), n as i64 <= bound, "n = {n}");
        }
    }

    #[test]
    fn extremal_vectors_and_proportionality() {
        let cartan = validate_gcm(&fixtures::a(2)).unwrap();
        let m = build_fundamental(&cartan, 0).unwrap();
        assert_eq!(m.extremal_vector(&[]).unwrap(), m.lowest_vector());
        let top = m.extremal_vector(&[0, 1, 0]).unwrap();
        assert_eq!(top.weight, Some(Weight(vec![0, 1])));
        let two = rat(2);
        assert_eq!(proportionality(&top, &top).unwrap(), Some(BigRational::one()));
        assert_eq!(proportionality(&top.scale(&two), &top).unwrap(), Some(two));
        assert!(proportionality(&ModuleVector::zero(), &top).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let cartan = validate_gcm(&fixtures::b(2)).unwrap();
        let dir = std::env::temp_dir().join(format!("trailcone-cache-test-{}", std::process::id()));
        let built = LowestWeightModule::load_or_build(Some(&dir), &cartan, 0).unwrap();
        let loaded = LowestWeightModule::load(&dir, &cartan, 0).unwrap().unwrap();
        assert_eq!(built, loaded);
        std::fs::remove_dir_all(&dir).ok();
    }
}
