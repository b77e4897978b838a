//! Closed-form `sl(2)` tensor calculus.
//!
//! Fix lowest weights `-a_1, …, -a_n` and write
//! `v_k = e^{k_n}(v_{-a_n} ⊗ e^{k_{n-1}}(v_{-a_{n-1}} ⊗ ⋯ e^{k_1} v_{-a_1}))`
//! for the nested monomial vectors. [`coefficient_a`] returns the coefficient
//! of `v_l` in `f^b v_k`, where `b = Σ (k_i − ℓ_i)`.
//!
//! Tuples are stored with factor 1 first, so `a[0]` is `a_1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error("b_{index} = k_{index} - l_{index} is negative; the coefficient is 0")]
    NegativeB { index: usize },
    #[error("tuples a, k, l must have the same positive length")]
    ShapeMismatch,
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("no shifting possible: q = {0} is negative")]
    NotApplicable(i64),
}

/// The data `(a, k, l)` of one coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sl2Config {
    pub a: Vec<i64>,
    pub k: Vec<i64>,
    pub l: Vec<i64>,
}

impl Sl2Config {
    pub fn new(a: Vec<i64>, k: Vec<i64>, l: Vec<i64>) -> Result<Self, Sl2Error> {
        let n = a.len();
        if n == 0 || k.len() != n || l.len() != n {
            return Err(Sl2Error::ShapeMismatch);
        }
        if a.iter().chain(&k).chain(&l).any(|&x| x < 0) {
            return Err(Sl2Error::DomainError("entries must be non-negative".into()));
        }
        Ok(Sl2Config { a, k, l })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn b(&self, i: usize) -> i64 {
        self.k[i] - self.l[i]
    }

    pub fn total_b(&self) -> i64 {
        (0..self.n()).map(|i| self.b(i)).sum()
    }

    /// First index with `k_i < ℓ_i`, if any.
    pub fn negative_b(&self) -> Option<usize> {
        (0..self.n()).find(|&i| self.b(i) < 0)
    }

    /// The linear factors `a^(j) + 1 − i − k^(j−1) − ℓ^(j)` of the closed
    /// form, for `j = 1..n` and `i = 1..b_j`.
    pub fn linear_factors(&self) -> Vec<i64> {
        let mut out = Vec::new();
        let (mut a_sum, mut k_prev, mut l_sum) = (0, 0, 0);
        for j in 0..self.n() {
            a_sum += self.a[j];
            l_sum += self.l[j];
            for i in 1..=self.b(j) {
                out.push(a_sum + 1 - i - k_prev - l_sum);
            }
            k_prev += self.k[j];
        }
        out
    }
}

pub fn factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, x| acc * x)
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n (n−1) ⋯ (n−len+1)`.
fn falling(n: i64, len: i64) -> BigInt {
    (0..len).fold(BigInt::one(), |acc, i| acc * (n - i))
}

/// The closed-form coefficient of `v_l` in `f^b v_k`.
pub fn coefficient_a(cfg: &Sl2Config) -> Result<BigInt, Sl2Error> {
    if let Some(index) = cfg.negative_b() {
        return Err(Sl2Error::NegativeB { index: index + 1 });
    }
    Ok(coefficient_value(cfg))
}

/// Like [`coefficient_a`] but returning the conventional 0 for negative `b_i`.
pub fn coefficient_value(cfg: &Sl2Config) -> BigInt {
    if cfg.negative_b().is_some() {
        return BigInt::zero();
    }
    let mut acc = factorial(cfg.total_b());
    for i in 0..cfg.n() {
        acc *= binomial(cfg.k[i], cfg.l[i]);
    }
    for factor in cfg.linear_factors() {
        if factor == 0 {
            return BigInt::zero();
        }
        acc *= factor;
    }
    acc
}

/// The same coefficient computed by peeling one `f` at a time:
/// `A_b(k, l) = −Σ_t k_t (k_t + 2k^(t−1) − a^(t) − 1) A_{b−1}(k − δ_t, l)`.
pub fn coefficient_a_oracle(cfg: &Sl2Config) -> BigInt {
    RecurrenceTable::new(&cfg.a, &cfg.l).value(&cfg.k)
}

/// Memo table for the recurrence with `a` and `l` fixed.
pub struct RecurrenceTable {
    a: Vec<i64>,
    l: Vec<i64>,
    memo: HashMap<Vec<i64>, BigInt>,
}

impl RecurrenceTable {
    pub fn new(a: &[i64], l: &[i64]) -> Self {
        RecurrenceTable { a: a.to_vec(), l: l.to_vec(), memo: HashMap::new() }
    }

    pub fn value(&mut self, k: &[i64]) -> BigInt {
        if k.iter().zip(&self.l).any(|(x, y)| x < y) {
            return BigInt::zero();
        }
        if k == self.l.as_slice() {
            return BigInt::one();
        }
        if let Some(v) = self.memo.get(k) {
            return v.clone();
        }
        let mut acc = BigInt::zero();
        let (mut a_sum, mut k_prev) = (0, 0);
        for t in 0..k.len() {
            a_sum += self.a[t];
            let kt = k[t];
            if kt > self.l[t] {
                let weight = -kt * (kt + 2 * k_prev - a_sum - 1);
                if weight != 0 {
                    let mut lowered = k.to_vec();
                    lowered[t] -= 1;
                    acc += self.value(&lowered) * weight;
                }
            }
            k_prev += kt;
        }
        self.memo.insert(k.to_vec(), acc.clone());
        acc
    }
}

/// The alternating sum
/// `Σ_v C(q,v)(−1)^{q−v}(p2−v)!(p1+v)! / ((p2−v−u)!(p1−q+v+u+1)!)`,
/// which vanishes for `0 ≤ u < q ≤ p2`. Terms whose denominator has a
/// negative factorial argument are 0.
pub fn vanishing_identity(q: i64, p1: i64, p2: i64, u: i64) -> Result<BigInt, Sl2Error> {
    if q < 1 || u < 0 || u > q - 1 || p1 < 0 || p2 < q {
        return Err(Sl2Error::DomainError(format!("need 0 <= u < q <= p2, got q={q} p1={p1} p2={p2} u={u}")));
    }
    let mut acc = BigInt::zero();
    for v in 0..=q {
        if p2 - v - u < 0 || p1 - q + v + u + 1 < 0 {
            continue;
        }
        let term = binomial(q, v) * falling(p2 - v, u) * falling(p1 + v, q - u - 1);
        if (q - v) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// The `q × (q+1)` coefficient system whose kernel contains the quasi-equal
/// factors; returns its rank. Rank `q` means the solution is unique up to a
/// scalar.
pub fn shift_system_rank(q: i64, p1: i64, p2: i64) -> Result<usize, Sl2Error> {
    if q < 1 || p1 < 0 || p2 < q {
        return Err(Sl2Error::DomainError(format!("need 1 <= q <= p2, got q={q} p2={p2}")));
    }
    let inv_fact = |n: i64| {
        if n < 0 {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::one(), factorial(n))
        }
    };
    let system: Vec<Vec<BigRational>> = (0..q)
        .map(|u| {
            (0..=q)
                .map(|v| {
                    let entry = inv_fact(p2 - v - u) * inv_fact(p1 - q + v + u + 1);
                    if v % 2 == 0 {
                        entry
                    } else {
                        -entry
                    }
                })
                .collect()
        })
        .collect();
    Ok(crate::linalg::rank(&system))
}

/// Relative scalars `h_v = (p2−v)!(p1+v)! C(q,v)`, `v = 0..=q`, with
/// `q = p2 + p1 − a`.
pub fn quasi_equal_factors(p2: i64, p1: i64, a: i64) -> Result<Vec<BigInt>, Sl2Error> {
    let q = p2 + p1 - a;
    if q < 0 {
        return Err(Sl2Error::NotApplicable(q));
    }
    if a < p1 || p1 < 0 || p2 < 0 {
        return Err(Sl2Error::DomainError(format!("need a >= p1 >= 0, got a={a} p1={p1}")));
    }
    Ok((0..=q).map(|v| factorial(p2 - v) * factorial(p1 + v) * binomial(q, v)).collect())
}
