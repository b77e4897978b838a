//! Grouping trails into classes `T_s(e)`, the ℓ-minimal data `(a, ℓ, c)`,
//! per-member parameters `c′`, the minimax decomposition and rigidification.
//!
//! For a step `j` with `s = i_j` and `j = (s, n)`, two trails trivializing at
//! `w_j` share a class when their exponents agree at every position of
//! `[1, j−1]` not carrying `s`. Inside a class a trail is described by
//! `k_i = n_{(s,i)}`, `i = 1..n`.

use super::{kashiwara_function, try_adjoin_face, LinearFunctionBJ, Trail, TrailError, TrailFrame};
use crate::rep::LowestWeightModule;
use crate::sl2::{coefficient_value, Sl2Config};
use num_traits::Signed;
use serde::Serialize;
use std::collections::BTreeMap;

/// One class `T_s(e)` at step `j`.
#[derive(Debug, Clone, Serialize)]
pub struct TsClass {
    pub s: usize,
    pub j: usize,
    /// Positions `(s,1), …, (s,n) = j`.
    pub positions: Vec<usize>,
    /// Exponents at the positions of `[1, j−1]` not carrying `s`.
    pub signature: Vec<u64>,
    /// `a_1, …, a_n`.
    pub a: Vec<i64>,
    /// Members ordered lexicographically by `k`.
    pub members: Vec<Trail>,
    /// `ℓ = k(K_{ℓmin})`, of length `n`.
    pub l: Vec<i64>,
    /// `c_1, …, c_{n−1}`.
    pub c: Vec<i64>,
    /// `c′` of each member, aligned with `members`.
    pub c_prime: Vec<Vec<i64>>,
    /// Whether each member already trivializes at `w_{j−1}`.
    pub minus: Vec<bool>,
}

impl TsClass {
    pub fn n(&self) -> usize {
        self.positions.len()
    }

    /// The ℓ-minimal member.
    pub fn l_min(&self) -> &Trail {
        &self.members[0]
    }

    pub fn k_of(&self, trail: &Trail) -> Vec<i64> {
        self.positions.iter().map(|&p| trail.exp_at(p) as i64).collect()
    }

    pub fn minus_members(&self) -> impl Iterator<Item = (&Trail, &Vec<i64>)> {
        self.members.iter().zip(&self.c_prime).zip(&self.minus).filter(|(_, &m)| m).map(|(x, _)| x)
    }
}

fn prefix(v: &[i64], upto: usize) -> i64 {
    v[..upto].iter().sum()
}

/// Exponents at the non-`s` positions of `[1, j−1]`.
fn signature(frame: &TrailFrame, trail: &Trail, s: usize, j: usize) -> Vec<u64> {
    (1..j).filter(|&p| frame.word().letter(p) != s).map(|p| trail.exp_at(p)).collect()
}

/// Partitions trails trivializing at `w_j` into classes and validates the
/// ℓ-minimal lemmas on each class. Under (H) the driving trail is left out
/// when `s = t`.
pub fn group_ts_classes(frame: &TrailFrame, trails: &[&Trail], j: usize) -> Result<Vec<TsClass>, TrailError> {
    let s = frame.word().letter(j);
    let n = frame.word().count_upto(s, j);
    let positions: Vec<usize> = frame.word().positions_of(s)[..n].to_vec();
    let mut groups: BTreeMap<Vec<u64>, Vec<Trail>> = BTreeMap::new();
    for &trail in trails {
        if trail.phi > j {
            return Err(TrailError::MixedTrivialization(format!("trail with φ = {} offered at step {j}", trail.phi)));
        }
        if s == frame.t() && trail == frame.driving_trail() {
            continue;
        }
        groups.entry(signature(frame, trail, s, j)).or_default().push(trail.clone());
    }
    let mut out = Vec::new();
    for (sig, mut members) in groups {
        let k_of = |t: &Trail| positions.iter().map(|&p| t.exp_at(p) as i64).collect::<Vec<_>>();
        members.sort_by_key(|t| k_of(t));
        let first = &members[0];
        let cartan = frame.cartan();
        let mut a = vec![-first.gamma_at(positions[0]).pairing(s)];
        for w in positions.windows(2) {
            let drop: i64 = (w[0] + 1..w[1]).map(|p| first.exp_at(p) as i64 * cartan.entry(s, frame.word().letter(p))).sum();
            a.push(-drop);
        }
        let l = k_of(first);
        let c_full: Vec<i64> = (1..=n).map(|i| prefix(&a, i) - prefix(&l, i) - prefix(&l, i - 1)).collect();
        let c = c_full[..n - 1].to_vec();
        let c_prime: Vec<Vec<i64>> = members.iter().map(|t| (1..n).map(|i| prefix(&k_of(t), i) - prefix(&l, i)).collect()).collect();
        let minus = members.iter().map(|t| t.phi < j).collect();
        let class = TsClass { s, j, positions: positions.clone(), signature: sig, a, members, l, c, c_prime, minus };
        validate_class(frame, &class, &c_full)?;
        out.push(class);
    }
    Ok(out)
}

fn validate_class(frame: &TrailFrame, class: &TsClass, c_full: &[i64]) -> Result<(), TrailError> {
    let fail = |msg: String| Err(TrailError::ClassInvariant(format!("s={} j={}: {msg}", class.s, class.j)));
    let n = class.n();
    let (s, cartan, word) = (class.s, frame.cartan(), frame.word());
    if class.a[0] < 0 {
        return fail(format!("a_1 = {} is negative", class.a[0]));
    }
    if c_full[n - 1] != 0 {
        return fail(format!("c_n = {} is non-zero", c_full[n - 1]));
    }
    for i in 1..n {
        if class.l[i - 1] > class.a[i] {
            return fail(format!("ℓ_{i} = {} exceeds a_{} = {}", class.l[i - 1], i + 1, class.a[i]));
        }
    }
    if let Some(i) = class.c.iter().position(|&x| x < 0) {
        return fail(format!("c_{} is negative", i + 1));
    }
    if !class.minus[0] {
        return fail("the ℓ-minimal trail does not trivialize at w_{j-1}".into());
    }
    let z_min = frame.trail_function(class.l_min());
    for (i, &p) in class.positions.iter().enumerate() {
        if z_min.coeff(p) != -c_full[i] {
            return fail(format!("coefficient of m_(s,{}) in z^ℓmin disagrees with c", i + 1));
        }
    }
    let faces: Vec<LinearFunctionBJ> = (1..n)
        .map(|i| Ok(kashiwara_function(cartan, word, s, i)?.sub(&kashiwara_function(cartan, word, s, i + 1)?)))
        .collect::<Result<_, TrailError>>()?;
    for (member, cp) in class.members.iter().zip(&class.c_prime) {
        let k = class.k_of(member);
        if prefix(&k, n) != prefix(&class.l, n) {
            return fail("member weight at w_j differs from the ℓ-minimal trail".into());
        }
        let mut expected = z_min.clone();
        for (i, face) in faces.iter().enumerate() {
            expected = expected.add_scaled(face, cp[i]);
        }
        if expected != frame.trail_function(member) {
            return fail(format!("z^K ≠ z^ℓmin + Σ c′(r^i − r^(i+1)) for exps {:?}", member.exps));
        }
        let coeff = frame.trail_function(member).coeff(class.positions[0]);
        if coeff > 0 {
            return fail(format!("α_s^∨(δ_(s,1)) = {coeff} is positive"));
        }
        let is_minus = member.phi < class.j;
        if is_minus != (n < 2 || cp[n - 2] == 0) {
            return fail("T^- membership disagrees with c′_(n-1) = 0".into());
        }
    }
    Ok(())
}

/// Outcome of the minimax decomposition of one class.
#[derive(Debug, Clone, Serialize)]
pub struct Minimax {
    pub k_max: Trail,
    pub k_min: Trail,
    /// `d_1, …, d_n`.
    pub d: Vec<i64>,
    /// Whether the minimal trail coincides with the ℓ-minimal one.
    pub min_is_l_min: bool,
}

/// Builds the maximal trail of the class, then subtracts `d_{k+1}` copies of
/// `F_s^{k+1}` for `k = 1..n−1`, checking the intermediate coefficient
/// pattern and the final identities.
pub fn minimax_decompose(module: &LowestWeightModule, frame: &TrailFrame, class: &TsClass) -> Result<Minimax, TrailError> {
    let fail = |msg: String| Err(TrailError::ClassInvariant(format!("minimax s={} j={}: {msg}", class.s, class.j)));
    let (s, n, j) = (class.s, class.n(), class.j);
    let template = class.l_min();
    let mut exps = template.exps.clone();
    let mut v = frame.start_vector(module)?;
    for p in 1..j {
        let letter = frame.word().letter(p);
        if letter == s {
            exps[p - 1] = module.string_length(s, &v);
        }
        v = module.raise_power(letter, exps[p - 1], &v);
        if v.is_zero() {
            return Err(TrailError::NoMaximalTrail);
        }
    }
    let Some(need) = v.weight.as_ref().map(|w| frame.extremal(j).sub(w).pairing(s) / 2) else {
        return Err(TrailError::NoMaximalTrail);
    };
    if need < 0 {
        return Err(TrailError::NoMaximalTrail);
    }
    exps[j - 1] = need as u64;
    let k_max = match frame.trail_from_exps(&exps) {
        Ok(t) if t.phi <= j && frame.realize(module, &t).is_ok() => t,
        _ => return Err(TrailError::NoMaximalTrail),
    };
    if !class.members.contains(&k_max) {
        return fail("maximal trail is not a class member".into());
    }
    let coeffs = |t: &Trail| {
        let z = frame.trail_function(t);
        class.positions.iter().map(|&p| z.coeff(p)).collect::<Vec<i64>>()
    };
    let d = coeffs(&k_max);
    if d[0] != 0 || d.iter().any(|&x| x < 0) {
        return fail(format!("d = {d:?} violates d_1 = 0 or d ≥ 0"));
    }
    let mut current = k_max.clone();
    for level in 1..=n {
        let pattern: Vec<i64> = (1..=n)
            .map(|k| match k.cmp(&level) {
                std::cmp::Ordering::Less => -d[k],
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => d[k - 1],
            })
            .collect();
        if coeffs(&current) != pattern {
            return fail(format!("coefficient pattern at level {level}: {:?} vs {pattern:?}", coeffs(&current)));
        }
        if level < n {
            match try_adjoin_face(module, frame, &current, s, level + 1, -d[level])? {
                Some(next) => current = next,
                None => return fail(format!("cannot remove {} copies of F^{}", d[level], level + 1)),
            }
        }
    }
    let k_min = current;
    let vectors = frame.realize(module, &k_min)?;
    for &p in &class.positions {
        if !module.lower(s, &vectors[p - 1]).is_zero() {
            return fail(format!("f_s does not kill v_{p} of the minimal trail"));
        }
    }
    let c_min: Vec<i64> = coeffs(&k_min).iter().map(|x| -x).collect();
    for k in 1..n {
        if d[k] != c_min[k - 1] {
            return fail(format!("d_{} = {} but c_{k}(K_min) = {}", k + 1, d[k], c_min[k - 1]));
        }
    }
    let mut rebuilt: Vec<i64> = k_min.exps.iter().map(|&x| x as i64).collect();
    for k in 1..n {
        rebuilt[class.positions[k - 1] - 1] += c_min[k - 1];
        rebuilt[class.positions[k] - 1] -= c_min[k - 1];
    }
    if rebuilt != k_max.exps.iter().map(|&x| x as i64).collect::<Vec<_>>() {
        return fail("K_max ≠ K_min + Σ c_k F^(k+1)".into());
    }
    let min_is_l_min = k_min == *class.l_min();
    Ok(Minimax { k_max, k_min, d, min_is_l_min })
}

/// The rigid system attached to `(ℓ, a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rigidified {
    /// `ℓ̃_1, …, ℓ̃_n` with `ℓ̃_n = 0`.
    pub l_tilde: Vec<i64>,
    /// `c̃_1, …, c̃_{n−1}`.
    pub c_tilde: Vec<i64>,
}

/// `ℓ̃_1 = ℓ_1`, `ℓ̃_i = min(ℓ_i, a_i − ℓ̃_{i−1})`, `ℓ̃_n = 0`.
pub fn rigidify(l: &[i64], a: &[i64]) -> Rigidified {
    let n = l.len();
    let mut l_tilde = vec![0i64; n];
    for i in 0..n.saturating_sub(1) {
        let prev = if i == 0 { 0 } else { l_tilde[i - 1] };
        l_tilde[i] = l[i].min(a[i] - prev);
    }
    let c_tilde = (1..n).map(|i| prefix(a, i) - prefix(&l_tilde, i) - prefix(&l_tilde, i - 1)).collect();
    Rigidified { l_tilde, c_tilde }
}

impl Rigidified {
    /// `c̃′_i = k^(i) − ℓ̃^(i)` for a member with exponents `k`.
    pub fn c_tilde_prime(&self, k: &[i64]) -> Vec<i64> {
        (1..self.l_tilde.len()).map(|i| prefix(k, i) - prefix(&self.l_tilde, i)).collect()
    }

    pub fn is_rigid(&self) -> bool {
        self.c_tilde.windows(2).all(|w| w[0] <= w[1])
    }

    /// `(c̃_i − c̃′_i) − (c_i − c′_i)` for `i = 1..n−1`. Algebraically this is
    /// `ℓ^(i−1) − ℓ̃^(i−1)`, so it vanishes for `i ≤ 2`.
    pub fn identity_defect(&self, c: &[i64], c_prime: &[i64], k: &[i64]) -> Vec<i64> {
        let ctp = self.c_tilde_prime(k);
        (0..c.len()).map(|i| (self.c_tilde[i] - ctp[i]) - (c[i] - c_prime[i])).collect()
    }

    /// The coefficient of `v_{ℓ̃}` in `f^b v_{ℓ̄}` with `ℓ̄ = (ℓ_1, …, ℓ_{n−1}, 0)`,
    /// together with the linear factors of its closed form.
    pub fn lowering_coefficient(&self, l: &[i64], a: &[i64]) -> (num_bigint::BigInt, Vec<i64>) {
        let mut l_bar = l.to_vec();
        if let Some(last) = l_bar.last_mut() {
            *last = 0;
        }
        let cfg = Sl2Config { a: a.to_vec(), k: l_bar, l: self.l_tilde.clone() };
        (coefficient_value(&cfg), cfg.linear_factors())
    }

    /// Whether every linear factor and the coefficient itself are positive.
    pub fn lowering_is_positive(&self, l: &[i64], a: &[i64]) -> bool {
        let (value, factors) = self.lowering_coefficient(l, a);
        value.is_positive() && factors.iter().all(|&f| f > 0)
    }
}
