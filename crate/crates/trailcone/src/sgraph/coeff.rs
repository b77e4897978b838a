use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoeffError {
    #[error("coefficient c_{index} = {value} is negative")]
    Negative { index: usize, value: i64 },
    #[error("order lift {0:?} is not a permutation of 1..=n-1")]
    NotPermutation(Vec<usize>),
    #[error("order lift {0:?} does not refine the order on values")]
    NotRefinement(Vec<usize>),
}

/// The tuple `c = (c_1, …, c_{n−1})` with a total order `≺` on `N = [1, n−1]`
/// refining the order on values. Indices are 1-based throughout; `c_n = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CoeffVector {
    values: Vec<i64>,
    /// `u_1 ≺ u_2 ≺ … ≺ u_{n−1}`.
    lift: Vec<usize>,
}

impl CoeffVector {
    /// Ties are broken by putting the smaller index first.
    pub fn new(values: Vec<i64>) -> Result<Self, CoeffError> {
        let mut lift: Vec<usize> = (1..=values.len()).collect();
        lift.sort_by_key(|&i| (values[i - 1], i));
        Self::with_lift(values, lift)
    }

    pub fn with_lift(values: Vec<i64>, lift: Vec<usize>) -> Result<Self, CoeffError> {
        if let Some(index) = values.iter().position(|&x| x < 0) {
            return Err(CoeffError::Negative { index: index + 1, value: values[index] });
        }
        let mut sorted = lift.clone();
        sorted.sort_unstable();
        if sorted != (1..=values.len()).collect::<Vec<_>>() {
            return Err(CoeffError::NotPermutation(lift));
        }
        if lift.windows(2).any(|w| values[w[0] - 1] > values[w[1] - 1]) {
            return Err(CoeffError::NotRefinement(lift));
        }
        Ok(CoeffVector { values, lift })
    }

    /// Every order lift compatible with the values.
    pub fn all_lifts(values: &[i64]) -> Result<Vec<CoeffVector>, CoeffError> {
        let base = Self::new(values.to_vec())?;
        let mut out = vec![Vec::new()];
        let mut rest = base.lift.as_slice();
        while let Some(&first) = rest.first() {
            let block = rest.iter().take_while(|&&i| values[i - 1] == values[first - 1]).count();
            let perms = permutations(&rest[..block]);
            out = out.iter().flat_map(|prefix| perms.iter().map(move |p| [prefix.clone(), p.clone()].concat())).collect();
            rest = &rest[block..];
        }
        out.into_iter().map(|lift| Self::with_lift(values.to_vec(), lift)).collect()
    }

    /// `n`, one more than the number of coefficients.
    pub fn n(&self) -> usize {
        self.values.len() + 1
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn lift(&self) -> &[usize] {
        &self.lift
    }

    /// `c_i` for `i ∈ [1, n]`, with `c_n = 0`.
    pub fn get(&self, i: usize) -> i64 {
        if i == self.n() {
            0
        } else {
            self.values[i - 1]
        }
    }

    pub fn is_rigid(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// The `≺`-maximal index, if `N` is non-empty.
    pub fn maximal(&self) -> Option<usize> {
        self.lift.last().copied()
    }

    /// `N_j = {u_1, …, u_j}` in natural order.
    pub fn initial_segment(&self, j: usize) -> Vec<usize> {
        let mut seg = self.lift[..j].to_vec();
        seg.sort_unstable();
        seg
    }

    /// `θ(j)` with `u_j = v_{θ(j)}`, for `j = 1..n−1`.
    pub fn theta(&self) -> Vec<usize> {
        (1..self.n()).map(|j| self.initial_segment(j).binary_search(&self.lift[j - 1]).unwrap() + 1).collect()
    }

    /// `c⁻`: the coefficients with the `≺`-maximal one removed, reindexed.
    pub fn without_maximal(&self) -> Option<CoeffVector> {
        let u = self.maximal()?;
        let mut values = self.values.clone();
        values.remove(u - 1);
        let lift = self.lift[..self.lift.len() - 1].iter().map(|&i| if i > u { i - 1 } else { i }).collect();
        Some(CoeffVector { values, lift })
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
