//! The convex set `K(c)` in the coordinates `c′ = (c′_1, …, c′_{n−1})`, its
//! integer points and the integer points on coordinate lines.

use super::CoeffVector;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("point {0:?} is not in K(c)")]
    PointOutside(Vec<i64>),
    #[error("line type {u} is outside 1..={max}")]
    BadLineType { u: usize, max: usize },
}

/// The inequality `Σ coeffs[i]·c′_{i+1} ≥ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Halfspace {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

impl Halfspace {
    fn difference(dim: usize, plus: usize, minus: usize, rhs: i64) -> Self {
        let mut coeffs = vec![0; dim];
        coeffs[plus - 1] += 1;
        coeffs[minus - 1] -= 1;
        Halfspace { coeffs, rhs }
    }

    pub fn value(&self, point: &[i64]) -> i64 {
        self.coeffs.iter().zip(point).map(|(a, x)| a * x).sum()
    }

    pub fn holds(&self, point: &[i64]) -> bool {
        self.value(point) >= self.rhs
    }

    pub fn holds_rational(&self, point: &[BigRational]) -> bool {
        let lhs = self.coeffs.iter().zip(point).fold(BigRational::zero(), |acc, (&a, x)| acc + x * BigRational::from_integer(a.into()));
        lhs >= BigRational::from_integer(self.rhs.into())
    }
}

/// The box bounds `0 ≤ c′_j ≤ c_j`, then for each `j` the two difference
/// constraints pairing `u_j` with its right and left neighbours in `N_j`.
/// A neighbour falling outside `N_j` contributes no constraint.
pub fn constraints(c: &CoeffVector) -> Vec<Halfspace> {
    let dim = c.n() - 1;
    let mut out = Vec::new();
    for j in 1..=dim {
        let mut lower = vec![0; dim];
        lower[j - 1] = 1;
        out.push(Halfspace { coeffs: lower.clone(), rhs: 0 });
        lower[j - 1] = -1;
        out.push(Halfspace { coeffs: lower, rhs: -c.get(j) });
    }
    let theta = c.theta();
    for j in 1..=dim {
        let segment = c.initial_segment(j);
        let pos = theta[j - 1] - 1;
        let uj = segment[pos];
        if let Some(&right) = segment.get(pos + 1) {
            out.push(Halfspace::difference(dim, right, uj, c.get(right) - c.get(uj)));
        }
        if pos > 0 {
            out.push(Halfspace::difference(dim, uj, segment[pos - 1], 0));
        }
    }
    out
}

pub fn polytope_membership(c: &CoeffVector, point: &[i64]) -> bool {
    point.len() + 1 == c.n() && constraints(c).iter().all(|h| h.holds(point))
}

pub fn polytope_membership_rational(c: &CoeffVector, point: &[BigRational]) -> bool {
    point.len() + 1 == c.n() && constraints(c).iter().all(|h| h.holds_rational(point))
}

/// `K_Z(c)` in lexicographic order.
pub fn integer_points(c: &CoeffVector) -> Vec<Vec<i64>> {
    let hs = constraints(c);
    let mut out = Vec::new();
    let mut point = vec![0i64; c.n() - 1];
    loop {
        if hs.iter().all(|h| h.holds(&point)) {
            out.push(point.clone());
        }
        let mut k = point.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if point[k] < c.get(k + 1) {
                point[k] += 1;
                point[k + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

/// Number of integer points of `K(c)` on the line through `point` along
/// the `u`-th coordinate.
pub fn line_count(c: &CoeffVector, point: &[i64], u: usize) -> Result<usize, PolytopeError> {
    let dim = c.n() - 1;
    if u == 0 || u > dim {
        return Err(PolytopeError::BadLineType { u, max: dim });
    }
    if !polytope_membership(c, point) {
        return Err(PolytopeError::PointOutside(point.to_vec()));
    }
    let mut probe = point.to_vec();
    Ok((0..=c.get(u))
        .filter(|&x| {
            probe[u - 1] = x;
            polytope_membership(c, &probe)
        })
        .count())
}

/// The count predicted for a line along the `≺`-maximal coordinate `u`:
/// `max(1 + c′_{u+1} + c_u − c_{u+1} − c′_{u−1}, 1)` with `c′_0 = c′_n = 0`.
pub fn predicted_maximal_line_count(c: &CoeffVector, point: &[i64]) -> Option<i64> {
    let u = c.maximal()?;
    let at = |i: usize| if i == 0 || i >= c.n() { 0 } else { point[i - 1] };
    Some((1 + at(u + 1) + c.get(u) - c.get(u + 1) - at(u - 1)).max(1))
}
