//! Canonical S-graphs built by binary fusion, the convex set `K(c)` and
//! neighbour graphs.
//!
//! Vertex functions are stored as `c′`-tuples: the tuple `x` stands for
//! `f_{v_n} + Σ_i x_i (r^i − r^{i+1})`, where `f_{v_n}` is the driving
//! function. [`expand_function`] turns a tuple into a [`LinearFunctionBJ`]
//! once a word and a type `s` are fixed.

mod coeff;
mod polytope;

pub use coeff::{CoeffError, CoeffVector};
pub use polytope::{
    constraints, integer_points, line_count, polytope_membership, polytope_membership_rational, predicted_maximal_line_count, Halfspace,
    PolytopeError,
};

use crate::cartan::{CartanData, WordJ};
use crate::trails::{kashiwara_function, LinearFunctionBJ, TrailError};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SGraphError {
    #[error("edge {a}-{b} labelled {label} violates the edge relation")]
    EdgeRelation { a: usize, b: usize, label: usize },
    #[error("expected exactly one pointed chain, found {0}")]
    PointedChain(usize),
    #[error("pointed chain relation fails at label {0}")]
    ChainRelation(usize),
    #[error("vertex {vertex} with label {label} has a non-zero m^{label} coefficient")]
    LabelCoefficient { vertex: usize, label: usize },
    #[error(transparent)]
    Trail(#[from] TrailError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SVertex {
    /// Label in `N̂ = [1, n]`.
    pub label: usize,
    /// The function as a `c′`-tuple.
    pub f: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SEdge {
    pub a: usize,
    pub b: usize,
    /// Label in `N`.
    pub label: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SGraph {
    pub c: CoeffVector,
    pub vertices: Vec<SVertex>,
    pub edges: Vec<SEdge>,
    /// Vertex ids of `v_n, v_{n−1}, …, v_1`.
    pub pointed_chain: Vec<usize>,
}

/// Builds `𝒢(c)` by repeatedly splitting off the `≺`-maximal coefficient.
pub fn binary_fusion(c: &CoeffVector) -> Result<SGraph, SGraphError> {
    let (vertices, edges) = fuse(c);
    let mut graph = SGraph { c: c.clone(), vertices, edges, pointed_chain: Vec::new() };
    graph.pointed_chain = graph.find_pointed_chain()?;
    graph.verify()?;
    Ok(graph)
}

fn fuse(c: &CoeffVector) -> (Vec<SVertex>, Vec<SEdge>) {
    let Some(u) = c.maximal() else {
        return (vec![SVertex { label: 1, f: Vec::new() }], Vec::new());
    };
    let minus = c.without_maximal().expect("non-empty coefficients");
    let (inner_vertices, inner_edges) = fuse(&minus);
    let n = c.n();
    let count = inner_vertices.len();
    let bump = |i: usize| if i < u { i } else { i + 1 };
    let embed = |f: &[i64]| {
        let mut out = vec![0i64; n - 1];
        for (i, &x) in f.iter().enumerate() {
            out[bump(i + 1) - 1] = x;
        }
        out
    };
    let mut vertices = Vec::with_capacity(2 * count);
    for v in &inner_vertices {
        let mut f = embed(&v.f);
        f[u - 1] = if u > 1 { f[u - 2] } else { 0 };
        vertices.push(SVertex { label: bump(v.label), f });
    }
    for v in &inner_vertices {
        let mut f = embed(&v.f);
        let next = if u + 1 < n { f[u] } else { 0 };
        f[u - 1] = next + c.get(u) - c.get(u + 1);
        let label = if v.label <= u { v.label } else { v.label + 1 };
        vertices.push(SVertex { label, f });
    }
    let mut edges = Vec::with_capacity(2 * inner_edges.len() + count);
    for e in &inner_edges {
        edges.push(SEdge { a: e.a, b: e.b, label: bump(e.label) });
    }
    for e in &inner_edges {
        edges.push(SEdge { a: e.a + count, b: e.b + count, label: bump(e.label) });
    }
    for k in 0..count {
        if vertices[k].label == u + 1 {
            edges.push(SEdge { a: k, b: k + count, label: u });
        }
    }
    (vertices, edges)
}

/// `r^a − r^b` as a `c′`-tuple of length `dim`.
fn kashiwara_difference(dim: usize, a: usize, b: usize) -> Vec<i64> {
    let mut out = vec![0i64; dim];
    let (lo, hi, sign) = if a <= b { (a, b, 1) } else { (b, a, -1) };
    for i in lo..hi {
        out[i - 1] = sign;
    }
    out
}

impl SGraph {
    pub fn n(&self) -> usize {
        self.c.n()
    }

    pub fn vertices_with_label(&self, k: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].label == k).collect()
    }

    /// The S-set `Z(c)`.
    pub fn vertex_functions(&self) -> BTreeSet<Vec<i64>> {
        self.vertices.iter().map(|v| v.f.clone()).collect()
    }

    pub fn label_functions(&self, k: usize) -> BTreeSet<Vec<i64>> {
        self.vertices.iter().filter(|v| v.label == k).map(|v| v.f.clone()).collect()
    }

    fn adjacency(&self) -> BTreeMap<usize, Vec<(usize, usize)>> {
        let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e.a).or_default().push((e.b, e.label));
            adj.entry(e.b).or_default().push((e.a, e.label));
        }
        adj
    }

    fn find_pointed_chain(&self) -> Result<Vec<usize>, SGraphError> {
        let n = self.n();
        let adj = self.adjacency();
        let mut chains: Vec<Vec<usize>> = self.vertices_with_label(n).into_iter().map(|v| vec![v]).collect();
        for j in (1..n).rev() {
            chains = chains
                .into_iter()
                .flat_map(|chain| {
                    let last = *chain.last().unwrap();
                    adj.get(&last)
                        .into_iter()
                        .flatten()
                        .filter(|&&(w, label)| label == j && self.vertices[w].label == j)
                        .map(|&(w, _)| [chain.clone(), vec![w]].concat())
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        match chains.len() {
            1 => Ok(chains.pop().unwrap()),
            k => Err(SGraphError::PointedChain(k)),
        }
    }

    /// Checks the edge relation `f_v − f_{v′} = c_{(v,v′)}(r^{i_v} − r^{i_{v′}})`,
    /// the pointed-chain relation and that the `m^k` coefficient vanishes on
    /// label-`k` vertices.
    pub fn verify(&self) -> Result<(), SGraphError> {
        let dim = self.n() - 1;
        for e in &self.edges {
            let (va, vb) = (&self.vertices[e.a], &self.vertices[e.b]);
            let step = kashiwara_difference(dim, va.label, vb.label);
            let ok = (0..dim).all(|i| va.f[i] - vb.f[i] == self.c.get(e.label) * step[i]);
            if !ok {
                return Err(SGraphError::EdgeRelation { a: e.a, b: e.b, label: e.label });
            }
        }
        let chain = &self.pointed_chain;
        if self.vertices[chain[0]].f.iter().any(|&x| x != 0) {
            return Err(SGraphError::ChainRelation(self.n()));
        }
        for j in 1..self.n() {
            let (upper, lower) = (&self.vertices[chain[self.n() - j - 1]].f, &self.vertices[chain[self.n() - j]].f);
            let mut expected = upper.clone();
            expected[j - 1] += self.c.get(j);
            if *lower != expected {
                return Err(SGraphError::ChainRelation(j));
            }
        }
        for (id, v) in self.vertices.iter().enumerate() {
            if self.label_coefficient(&v.f, v.label) != 0 {
                return Err(SGraphError::LabelCoefficient { vertex: id, label: v.label });
            }
        }
        Ok(())
    }

    /// The coefficient of `m^k` in the function with `c′`-tuple `f`:
    /// `c′_k + c′_{k−1} − c_k`.
    pub fn label_coefficient(&self, f: &[i64], k: usize) -> i64 {
        let at = |i: usize| if i == 0 || i >= self.n() { 0 } else { f[i - 1] };
        at(k) + at(k - 1) - self.c.get(k)
    }

    /// Deterministic DOT rendering: vertices in id order labelled
    /// `k | (c′ tuple)`, edges sorted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph sgraph {\n");
        for (id, v) in self.vertices.iter().enumerate() {
            let tuple = v.f.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
            writeln!(out, "  v{id} [label=\"{} | ({tuple})\"];", v.label).unwrap();
        }
        let mut edges: Vec<_> = self.edges.iter().map(|e| (e.a.min(e.b), e.a.max(e.b), e.label)).collect();
        edges.sort_unstable();
        for (a, b, label) in edges {
            writeln!(out, "  v{a} -- v{b} [label=\"{label}\"];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// The neighbour graph `𝒢^j(c)` on the label-`j` vertices.
#[derive(Debug, Clone, Serialize)]
pub struct NeighborGraph {
    pub j: usize,
    pub vertices: Vec<usize>,
    /// `(v1, v2, u1)`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl NeighborGraph {
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(a, b, _) in &self.edges {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if seen.insert(other) {
                    queue.push_back(other);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

/// Joins `v1, v2` of label `j` when `f_{v1} − f_{v2} = ±(c_{u1} − c_{u2})(r^{u1+1} − r^{u1})`
/// for distinct `u1, u2 ∈ N` with `j ∉ {u1, u1+1}`; the edge records `u1`.
pub fn neighbor_graph(g: &SGraph, j: usize) -> NeighborGraph {
    let vertices = g.vertices_with_label(j);
    let dim = g.n() - 1;
    let mut edges = Vec::new();
    for (x, &v1) in vertices.iter().enumerate() {
        for &v2 in &vertices[x + 1..] {
            let diff: Vec<i64> = (0..dim).map(|i| g.vertices[v1].f[i] - g.vertices[v2].f[i]).collect();
            let through = (1..=dim).filter(|&u1| j != u1 && j != u1 + 1).find(|&u1| {
                let off_axis = diff.iter().enumerate().all(|(i, &d)| i + 1 == u1 || d == 0);
                off_axis && (1..=dim).any(|u2| u2 != u1 && (g.c.get(u1) - g.c.get(u2)).abs() == diff[u1 - 1].abs())
            });
            if let Some(u1) = through {
                edges.push((v1, v2, u1));
            }
        }
    }
    NeighborGraph { j, vertices, edges }
}

/// `driving + Σ_i x_i (r_s^i − r_s^{i+1})` on `B_J`.
pub fn expand_function(
    cartan: &CartanData,
    word: &WordJ,
    s: usize,
    driving: &LinearFunctionBJ,
    tuple: &[i64],
) -> Result<LinearFunctionBJ, SGraphError> {
    let mut out = driving.clone();
    for (i, &x) in tuple.iter().enumerate() {
        if x != 0 {
            let face = kashiwara_function(cartan, word, s, i + 1)?.sub(&kashiwara_function(cartan, word, s, i + 2)?);
            out = out.add_scaled(&face, x);
        }
    }
    Ok(out)
}
