//! Linear functions on `B_J = N^{|J|}`, the Kashiwara functions `r_s^k` and
//! the face functions `z^{F_s^k}`.

use crate::cartan::{CartanData, Weight, WordJ};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use super::TrailError;

/// A linear function `Σ_j c_j m_j` with finitely many non-zero integer
/// coefficients, keyed by 1-based position `j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearFunctionBJ {
    coeffs: BTreeMap<usize, i64>,
}

impl LinearFunctionBJ {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The coordinate function `m_j`.
    pub fn coordinate(j: usize) -> Self {
        let mut f = Self::zero();
        f.set(j, 1);
        f
    }

    pub fn from_dense(coeffs: &[i64]) -> Self {
        let mut f = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            f.set(k + 1, c);
        }
        f
    }

    pub fn coeff(&self, j: usize) -> i64 {
        self.coeffs.get(&j).copied().unwrap_or(0)
    }

    pub fn set(&mut self, j: usize, value: i64) {
        if value == 0 {
            self.coeffs.remove(&j);
        } else {
            self.coeffs.insert(j, value);
        }
    }

    pub fn add_to(&mut self, j: usize, delta: i64) {
        self.set(j, self.coeff(j) + delta);
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn max_support(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&j, &c)| (j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, other: &LinearFunctionBJ, factor: i64) -> Self {
        let mut out = self.clone();
        if factor != 0 {
            for (j, c) in other.iter() {
                out.add_to(j, factor * c);
            }
        }
        out
    }

    pub fn sub(&self, other: &LinearFunctionBJ) -> Self {
        self.add_scaled(other, -1)
    }

    /// Evaluates at a point given by its coordinates `m_1, m_2, …`.
    pub fn eval(&self, point: &[u64]) -> i64 {
        self.iter().map(|(j, c)| c * point.get(j - 1).map_or(0, |&x| x as i64)).sum()
    }

    /// Dense coefficients on positions `1..=len`.
    pub fn dense(&self, len: usize) -> Vec<i64> {
        (1..=len).map(|j| self.coeff(j)).collect()
    }
}

impl fmt::Display for LinearFunctionBJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (j, c)) in self.iter().enumerate() {
            let sep = if k == 0 {
                ""
            } else if c < 0 {
                " - "
            } else {
                " + "
            };
            let shown = if k == 0 { c } else { c.abs() };
            write!(f, "{sep}{shown}m{j}")?;
        }
        Ok(())
    }
}

/// `r_s^k = m_{(s,k)} + Σ_{j>(s,k)} α^∨_{i_j}(α_s) m_j`, and for `k = 0`
/// `r_s^0 = Σ_j α^∨_{i_j}(α_s) m_j`, the sign for which `r_s^0 − r_s^1` is the
/// driving function `z_s^1`.
pub fn kashiwara_function(cartan: &CartanData, word: &WordJ, s: usize, k: usize) -> Result<LinearFunctionBJ, TrailError> {
    cartan.check_letter(s)?;
    let mut f = LinearFunctionBJ::zero();
    if k == 0 {
        for j in 1..=word.len() {
            f.set(j, cartan.entry(word.letter(j), s));
        }
        return Ok(f);
    }
    let pos = word.position(s, k).ok_or(TrailError::PositionMissing { s, k })?;
    f.set(pos, 1);
    for j in pos + 1..=word.len() {
        f.set(j, cartan.entry(word.letter(j), s));
    }
    Ok(f)
}

/// Weight increments of the closed face `F_s^k` (`k > 1`): `α_s` at the
/// weights `γ_j` with `(s,k−1) < j ≤ (s,k)`, and zero elsewhere. Entry `j−1`
/// of the returned vector is the increment of `γ_j` for `j = 1..=m+1`.
pub fn face_weights(cartan: &CartanData, word: &WordJ, s: usize, k: usize) -> Result<Vec<Weight>, TrailError> {
    let (lower, upper) = face_span(word, s, k)?;
    let zero = Weight::zero(cartan.rank());
    let alpha = cartan.simple_root(s);
    Ok((1..=word.len() + 1).map(|j| if j > lower && j <= upper { alpha.clone() } else { zero.clone() }).collect())
}

/// The face function `m_u + Σ_{v<j<u} α^∨_{i_j}(α_s) m_j + m_v` with
/// `u = (s,k)`, `v = (s,k−1)`.
pub fn face_function(cartan: &CartanData, word: &WordJ, s: usize, k: usize) -> Result<LinearFunctionBJ, TrailError> {
    let (lower, upper) = face_span(word, s, k)?;
    let mut f = LinearFunctionBJ::zero();
    f.set(lower, 1);
    f.set(upper, 1);
    for j in lower + 1..upper {
        f.set(j, cartan.entry(word.letter(j), s));
    }
    Ok(f)
}

fn face_span(word: &WordJ, s: usize, k: usize) -> Result<(usize, usize), TrailError> {
    if k <= 1 {
        return Err(TrailError::OpenFaceRequest { s });
    }
    let upper = word.position(s, k).ok_or(TrailError::PositionMissing { s, k })?;
    let lower = word.position(s, k - 1).ok_or(TrailError::PositionMissing { s, k: k - 1 })?;
    Ok((lower, upper))
}

/// The driving function `z_s^1 = m_{(s,1)} + Σ_{j<(s,1)} α^∨_{i_j}(α_s) m_j`.
pub fn driving_function(cartan: &CartanData, word: &WordJ, s: usize) -> Result<LinearFunctionBJ, TrailError> {
    let pos = word.position(s, 1).ok_or(TrailError::TNotInWord(s))?;
    let mut f = LinearFunctionBJ::zero();
    f.set(pos, 1);
    for j in 1..pos {
        f.set(j, cartan.entry(word.letter(j), s));
    }
    Ok(f)
}
