//! Generalized Cartan matrices, integral weights, the Weyl group action and
//! the `(s, k)` position calculus on a finite word `J`.
//!
//! Matrix convention: `gcm[i][j]` is the pairing of the coroot `α_i^∨` with the
//! root `α_j`. Consequently the simple root `α_j` written in the basis of
//! fundamental weights is column `j` of the matrix.
//!
//! Node indices are `0..rank`. Every node also carries a printable label
//! (by default `1..=rank`) used in configs and reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("unknown letter {0}")]
    UnknownLetter(usize),
    #[error("unknown label {0}")]
    UnknownLabel(u32),
    #[error("word is not reduced: prefix of length {0} drops in length")]
    NotReduced(usize),
    #[error("the Cartan matrix is not of finite type")]
    NotFiniteType,
}

/// An integral weight in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ϖ_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = 1;
        w
    }

    /// Pairing `α_i^∨(self)`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn neg(&self) -> Self {
        Weight(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Weight) -> Self {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Self {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A validated generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    labels: Vec<u32>,
    gcm: Vec<Vec<i64>>,
    /// Squared root lengths up to a common scalar, when symmetrizable.
    symmetrizer: Option<Vec<BigRational>>,
    finite_type_tag: Option<String>,
}

/// Checks the GCM axioms and classifies the matrix.
///
/// Finite type is detected as positive-definiteness of the symmetrized matrix;
/// a non-symmetrizable or indefinite matrix is accepted but flagged as not of
/// finite type.
pub fn validate_gcm(matrix: &[Vec<i64>]) -> Result<CartanData, CartanError> {
    let rank = matrix.len();
    if rank == 0 {
        return Err(CartanError::NotGcm("empty matrix".into()));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != rank {
            return Err(CartanError::NotGcm(format!("row {i} has length {}", row.len())));
        }
        for (j, &x) in row.iter().enumerate() {
            if i == j && x != 2 {
                return Err(CartanError::NotGcm(format!("diagonal entry ({i},{j}) is {x}")));
            }
            if i != j && x > 0 {
                return Err(CartanError::NotGcm(format!("off-diagonal entry ({i},{j}) is positive")));
            }
            if i != j && (x == 0) != (matrix[j][i] == 0) {
                return Err(CartanError::NotGcm(format!("entries ({i},{j}) and ({j},{i}) vanish asymmetrically")));
            }
        }
    }
    let symmetrizer = symmetrize(matrix);
    let finite_type_tag = symmetrizer.as_ref().filter(|d| positive_definite(matrix, d)).map(|d| classify(matrix, d));
    Ok(CartanData { labels: (1..=rank as u32).collect(), gcm: matrix.to_vec(), symmetrizer, finite_type_tag })
}

fn components(matrix: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let rank = matrix.len();
    let mut seen = vec![false; rank];
    let mut out = Vec::new();
    for start in 0..rank {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..rank {
                if !seen[j] && matrix[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Finds positive `d` with `d_i A[i][j] = d_j A[j][i]`, if one exists.
fn symmetrize(matrix: &[Vec<i64>]) -> Option<Vec<BigRational>> {
    let rank = matrix.len();
    let mut d: Vec<Option<BigRational>> = vec![None; rank];
    for comp in components(matrix) {
        d[comp[0]] = Some(BigRational::one());
        let mut queue = VecDeque::from([comp[0]]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().unwrap();
            for j in 0..rank {
                if i == j || matrix[i][j] == 0 {
                    continue;
                }
                let dj = &di * BigRational::new(matrix[i][j].into(), matrix[j][i].into());
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(d.into_iter().map(Option::unwrap).collect())
}

/// Sylvester's criterion on `D A`.
fn positive_definite(matrix: &[Vec<i64>], d: &[BigRational]) -> bool {
    let rank = matrix.len();
    let sym: Vec<Vec<BigRational>> =
        (0..rank).map(|i| (0..rank).map(|j| &d[i] * BigRational::from_integer(matrix[i][j].into())).collect()).collect();
    (1..=rank).all(|k| {
        let minor: Vec<Vec<BigRational>> = sym[..k].iter().map(|r| r[..k].to_vec()).collect();
        crate::linalg::determinant(minor).is_positive()
    })
}

fn classify(matrix: &[Vec<i64>], d: &[BigRational]) -> String {
    let parts: Vec<String> = components(matrix).iter().map(|c| classify_component(matrix, d, c)).collect();
    parts.join("×")
}

fn classify_component(matrix: &[Vec<i64>], d: &[BigRational], comp: &[usize]) -> String {
    let n = comp.len();
    let bond = |i: usize, j: usize| matrix[i][j] * matrix[j][i];
    let mut max_bond = 0;
    let mut degree = vec![0usize; matrix.len()];
    for &i in comp {
        for &j in comp {
            if i != j && matrix[i][j] != 0 {
                degree[i] += 1;
                max_bond = max_bond.max(bond(i, j));
            }
        }
    }
    match max_bond {
        0 => return "A1".into(),
        3 => return "G2".into(),
        2 => {
            let shortest = comp.iter().map(|&i| d[i].clone()).min().unwrap();
            let short: Vec<usize> = comp.iter().copied().filter(|&i| d[i] == shortest).collect();
            if n == 4 && short.len() == 2 {
                let middle_double = comp.iter().any(|&i| comp.iter().any(|&j| bond(i, j) == 2 && degree[i] == 2 && degree[j] == 2));
                if middle_double {
                    return "F4".into();
                }
            }
            if n == 2 {
                let long = comp.iter().copied().find(|&i| d[i] != shortest).unwrap();
                return if short[0] > long { "B2".into() } else { "C2".into() };
            }
            return if short.len() == 1 { format!("B{n}") } else { format!("C{n}") };
        }
        _ => {}
    }
    let Some(&branch) = comp.iter().find(|&&i| degree[i] == 3) else {
        return format!("A{n}");
    };
    let mut arms: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&j| j != branch && matrix[branch][j] != 0)
        .map(|first| {
            let (mut prev, mut cur, mut len) = (branch, first, 1);
            loop {
                let next = comp.iter().copied().find(|&k| k != prev && k != cur && matrix[cur][k] != 0);
                match next {
                    Some(k) => {
                        prev = cur;
                        cur = k;
                        len += 1;
                    }
                    None => break len,
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => format!("D{n}"),
        [1, 2, 2] => "E6".into(),
        [1, 2, 3] => "E7".into(),
        [1, 2, 4] => "E8".into(),
        _ => format!("?{n}"),
    }
}

/// Positive roots of a finite-type matrix, in simple-root coordinates.
fn positive_roots_of(matrix: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = matrix.len();
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..rank {
        let mut r = vec![0; rank];
        r[i] = 1;
        found.insert(r.clone());
        queue.push_back(r);
    }
    while let Some(root) = queue.pop_front() {
        for i in 0..rank {
            let pairing: i64 = (0..rank).map(|k| matrix[i][k] * root[k]).sum();
            let mut image = root.clone();
            image[i] -= pairing;
            if image.iter().all(|&x| x >= 0) && image.iter().any(|&x| x > 0) && found.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    found.into_iter().collect()
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.gcm.len()
    }

    pub fn gcm(&self) -> &[Vec<i64>] {
        &self.gcm
    }

    /// `α_i^∨(α_j)`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gcm[i][j]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> u32 {
        self.labels[i]
    }

    pub fn index_of(&self, label: u32) -> Result<usize, CartanError> {
        self.labels.iter().position(|&l| l == label).ok_or(CartanError::UnknownLabel(label))
    }

    pub fn finite_type_tag(&self) -> Option<&str> {
        self.finite_type_tag.as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.finite_type_tag.is_some()
    }

    pub fn require_finite(&self) -> Result<(), CartanError> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(CartanError::NotFiniteType)
        }
    }

    /// Relative squared lengths of the simple roots, when symmetrizable.
    pub fn symmetrizer(&self) -> Option<&[BigRational]> {
        self.symmetrizer.as_deref()
    }

    pub fn check_letter(&self, i: usize) -> Result<(), CartanError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(CartanError::UnknownLetter(i))
        }
    }

    /// `α_j` in the fundamental-weight basis (column `j`).
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight(self.gcm.iter().map(|row| row[j]).collect())
    }

    /// `λ + n α_j`.
    pub fn shift(&self, lambda: &Weight, j: usize, n: i64) -> Weight {
        Weight(lambda.0.iter().zip(&self.gcm).map(|(x, row)| x + n * row[j]).collect())
    }

    /// The simple reflection `s_i λ = λ − α_i^∨(λ) α_i`.
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        self.shift(lambda, i, -lambda.pairing(i))
    }

    /// `α_i^∨` of an element given in simple-root coordinates.
    pub fn coroot_on_root(&self, i: usize, root: &[i64]) -> i64 {
        root.iter().enumerate().map(|(k, &x)| self.gcm[i][k] * x).sum()
    }

    /// Converts simple-root coordinates to the fundamental-weight basis.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        Weight((0..self.rank()).map(|i| self.coroot_on_root(i, root)).collect())
    }

    /// Positive roots in simple-root coordinates (finite type only).
    pub fn positive_roots(&self) -> Result<Vec<Vec<i64>>, CartanError> {
        self.require_finite()?;
        Ok(positive_roots_of(&self.gcm))
    }

    /// Weyl's dimension formula for the irreducible module of a dominant
    /// highest weight.
    pub fn weyl_dimension(&self, highest: &Weight) -> Result<BigInt, CartanError> {
        self.require_finite()?;
        let transpose: Vec<Vec<i64>> = (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.gcm[j][i]).collect()).collect();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for coroot in positive_roots_of(&transpose) {
            let shifted: i64 = coroot.iter().zip(&highest.0).map(|(c, l)| c * (l + 1)).sum();
            let rho: i64 = coroot.iter().sum();
            num *= shifted;
            den *= rho;
        }
        debug_assert!((&num % &den).is_zero());
        Ok(num / den)
    }
}

/// Whether the product `s_{i_m} ⋯ s_{i_1}` has length `m`.
///
/// The prefix through letter `j` is reduced exactly when
/// `s_{i_1} ⋯ s_{i_{j-1}} α_{i_j}` is a positive root.
pub fn is_reduced(cartan: &CartanData, word: &[usize]) -> Result<bool, CartanError> {
    Ok(first_non_reduced(cartan, word)?.is_none())
}

/// Length of the shortest non-reduced prefix, if any.
pub fn first_non_reduced(cartan: &CartanData, word: &[usize]) -> Result<Option<usize>, CartanError> {
    for &i in word {
        cartan.check_letter(i)?;
    }
    for (j, &letter) in word.iter().enumerate() {
        let mut root = vec![0i64; cartan.rank()];
        root[letter] = 1;
        for &i in word[..j].iter().rev() {
            let pairing = cartan.coroot_on_root(i, &root);
            root[i] -= pairing;
        }
        if root.iter().any(|&x| x < 0) {
            return Ok(Some(j + 1));
        }
    }
    Ok(None)
}

/// Applies `w = s_{i_m} ⋯ s_{i_1}` to `λ`, letter `i_1` first.
pub fn weyl_act(cartan: &CartanData, word: &[usize], lambda: &Weight) -> Result<Weight, CartanError> {
    let mut out = lambda.clone();
    for &i in word {
        cartan.check_letter(i)?;
        out = cartan.reflect(i, &out);
    }
    Ok(out)
}

/// A finite reduced word `J = (i_1, …, i_m)` together with its occurrence
/// calculus. Positions are 1-based as `j ∈ [1, m]`; occurrence counts `k`
/// are 1-based too, so `(s, 1)` is the first position carrying `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJ {
    letters: Vec<usize>,
    occurrences: Vec<Vec<usize>>,
    occurrence_of: Vec<(usize, usize)>,
}

impl WordJ {
    pub fn new(cartan: &CartanData, letters: Vec<usize>) -> Result<Self, CartanError> {
        if let Some(len) = first_non_reduced(cartan, &letters)? {
            return Err(CartanError::NotReduced(len));
        }
        let mut occurrences = vec![Vec::new(); cartan.rank()];
        let mut occurrence_of = Vec::with_capacity(letters.len());
        for (pos, &s) in letters.iter().enumerate() {
            occurrences[s].push(pos + 1);
            occurrence_of.push((s, occurrences[s].len()));
        }
        Ok(WordJ { letters, occurrences, occurrence_of })
    }

    /// Builds a word from node labels.
    pub fn from_labels(cartan: &CartanData, labels: &[u32]) -> Result<Self, CartanError> {
        let letters = labels.iter().map(|&l| cartan.index_of(l)).collect::<Result<Vec<_>, _>>()?;
        Self::new(cartan, letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// `i_j` for `j ∈ [1, m]`.
    pub fn letter(&self, j: usize) -> usize {
        self.letters[j - 1]
    }

    /// The position `(s, k)`, if `s` occurs at least `k ≥ 1` times.
    pub fn position(&self, s: usize, k: usize) -> Option<usize> {
        if k == 0 {
            return None;
        }
        self.occurrences.get(s)?.get(k - 1).copied()
    }

    /// The pair `(s, k)` at position `j`.
    pub fn occurrence(&self, j: usize) -> (usize, usize) {
        self.occurrence_of[j - 1]
    }

    /// All positions carrying `s`, increasing.
    pub fn positions_of(&self, s: usize) -> &[usize] {
        &self.occurrences[s]
    }

    /// Number of occurrences of `s` in positions `1..=j`.
    pub fn count_upto(&self, s: usize, j: usize) -> usize {
        self.occurrences[s].partition_point(|&p| p <= j)
    }

    /// `w_j λ = s_{i_j} ⋯ s_{i_1} λ`.
    pub fn act_prefix(&self, cartan: &CartanData, j: usize, lambda: &Weight) -> Weight {
        self.letters[..j].iter().fold(lambda.clone(), |acc, &i| cartan.reflect(i, &acc))
    }
}

/// Standard fixtures used by examples, tests and the CLI.
pub mod fixtures {
    pub fn a(n: usize) -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `B_n` with the short simple root last.
    pub fn b(n: usize) -> Vec<Vec<i64>> {
        let mut m = a(n);
        m[n - 1][n - 2] = -2;
        m
    }

    /// `C_n` with the long simple root last.
    pub fn c(n: usize) -> Vec<Vec<i64>> {
        let mut m = a(n);
        m[n - 2][n - 1] = -2;
        m
    }

    /// `D_n` with the fork at node `n-3`.
    pub fn d(n: usize) -> Vec<Vec<i64>> {
        let mut m = a(n);
        m[n - 2][n - 1] = 0;
        m[n - 1][n - 2] = 0;
        m[n - 3][n - 1] = -1;
        m[n - 1][n - 3] = -1;
        m
    }

    /// `G_2` with the short simple root second.
    pub fn g2() -> Vec<Vec<i64>> {
        vec![vec![2, -1], vec![-3, 2]]
    }

    /// A reduced word for the longest element, as 0-based letters read
    /// `i_1` first.
    pub fn longest_word(m: &[Vec<i64>]) -> Vec<usize> {
        let rank = m.len();
        let mut word = Vec::new();
        loop {
            let mut extended = false;
            for i in 0..rank {
                let mut candidate = word.clone();
                candidate.push(i);
                if reduced(m, &candidate) {
                    word = candidate;
                    extended = true;
                    break;
                }
            }
            if !extended {
                break;
            }
        }
        word
    }

    /// Every reduced word for the longest element, in lexicographic order.
    pub fn longest_words(m: &[Vec<i64>]) -> Vec<Vec<usize>> {
        let target = longest_word(m).len();
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(word) = stack.pop() {
            if word.len() == target {
                out.push(word);
                continue;
            }
            for i in (0..m.len()).rev() {
                let mut candidate = word.clone();
                candidate.push(i);
                if reduced(m, &candidate) {
                    stack.push(candidate);
                }
            }
        }
        out
    }

    fn reduced(m: &[Vec<i64>], word: &[usize]) -> bool {
        word.iter().enumerate().all(|(j, &letter)| {
            let mut root = vec![0i64; m.len()];
            root[letter] = 1;
            for &i in word[..j].iter().rev() {
                let pairing: i64 = root.iter().enumerate().map(|(k, &x)| m[i][k] * x).sum();
                root[i] -= pairing;
            }
            root.iter().all(|&x| x >= 0)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifies_standard_matrices() {
        let tag = |m: Vec<Vec<i64>>| validate_gcm(&m).unwrap().finite_type_tag().map(str::to_owned);
        assert_eq!(tag(fixtures::a(2)).as_deref(), Some("A2"));
        assert_eq!(tag(vec![vec![2, 0], vec![0, 2]]).as_deref(), Some("A1×A1"));
        assert_eq!(tag(fixtures::g2()).as_deref(), Some("G2"));
        assert_eq!(tag(fixtures::b(2)).as_deref(), Some("B2"));
        assert_eq!(tag(fixtures::c(2)).as_deref(), Some("C2"));
        assert_eq!(tag(fixtures::b(3)).as_deref(), Some("B3"));
        assert_eq!(tag(fixtures::c(3)).as_deref(), Some("C3"));
        assert_eq!(tag(fixtures::d(4)).as_deref(), Some("D4"));
        assert_eq!(tag(vec![vec![2, -2], vec![-2, 2]]), None);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(validate_gcm(&[vec![2, 1], vec![-1, 2]]).is_err());
        assert!(validate_gcm(&[vec![2, -1], vec![0, 2]]).is_err());
        assert!(validate_gcm(&[vec![1]]).is_err());
    }

    #[test]
    fn reduced_words() {
        let a2 = validate_gcm(&fixtures::a(2)).unwrap();
        assert!(is_reduced(&a2, &[0, 1, 0]).unwrap());
        assert!(!is_reduced(&a2, &[0, 0]).unwrap());
        assert!(!is_reduced(&a2, &[0, 1, 0, 1]).unwrap());
        assert_eq!(is_reduced(&a2, &[3]), Err(CartanError::UnknownLetter(3)));
        let b2 = validate_gcm(&fixtures::b(2)).unwrap();
        assert!(is_reduced(&b2, &[0, 1, 0, 1]).unwrap());
    }

    #[test]
    fn reflection_of_fundamental_weight() {
        let a2 = validate_gcm(&fixtures::a(2)).unwrap();
        let w1 = Weight::fundamental(2, 0);
        let image = weyl_act(&a2, &[0], &w1).unwrap();
        assert_eq!(image, w1.sub(&a2.simple_root(0)));
        assert_eq!(weyl_act(&a2, &[], &w1).unwrap(), w1);
        assert_eq!(weyl_act(&a2, &[0, 1, 0], &w1).unwrap(), Weight(vec![0, -1]));
    }

    #[test]
    fn positions_round_trip() {
        let a2 = validate_gcm(&fixtures::a(2)).unwrap();
        let word = WordJ::new(&a2, vec![0, 1, 0]).unwrap();
        assert_eq!(word.position(0, 2), Some(3));
        assert_eq!(word.position(1, 2), None);
        for j in 1..=word.len() {
            let (s, k) = word.occurrence(j);
            assert_eq!(word.position(s, k), Some(j));
        }
    }

    #[test]
    fn longest_words_have_expected_length() {
        for (m, len) in [(fixtures::a(3), 6), (fixtures::b(3), 9), (fixtures::g2(), 6), (fixtures::d(4), 12)] {
            assert_eq!(fixtures::longest_word(&m).len(), len);
        }
    }

    #[test]
    fn weyl_dimensions() {
        let g2 = validate_gcm(&fixtures::g2()).unwrap();
        assert_eq!(g2.weyl_dimension(&Weight::fundamental(2, 1)).unwrap(), 7.into());
        assert_eq!(g2.weyl_dimension(&Weight::fundamental(2, 0)).unwrap(), 14.into());
        let b2 = validate_gcm(&fixtures::b(2)).unwrap();
        assert_eq!(b2.weyl_dimension(&Weight::fundamental(2, 0)).unwrap(), 5.into());
    }
}
