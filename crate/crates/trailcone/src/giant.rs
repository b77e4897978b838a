//! The inductive envelope construction, false-trail detection, the
//! containment checks between consecutive layers, and `ε*_t`.
//!
//! Layer `j` holds the functions of trails trivializing at `w_j`. It is built
//! from layer `j−1` alone: the trails of layer `j−1` are split into classes
//! for `s = i_j`, each class contributes `K_Z(c)` around its ℓ-minimal
//! function, and every resulting function is decoded and realized in the
//! module. Anything that fails along the way is a false trail.

use crate::crystal::BJElement;
use crate::hull::extreme_points;
use crate::rep::LowestWeightModule;
use crate::sgraph::{binary_fusion, expand_function, integer_points, polytope_membership, CoeffVector, SGraph, SGraphError};
use crate::trails::{group_ts_classes, kashiwara_function, LinearFunctionBJ, Trail, TrailError, TrailFrame, TrailSet, TsClass};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnvelopeError {
    #[error("false trail detected at layer {}: {}", .0.layer, .0.reason)]
    FalseTrailDetected(Box<FalseTrail>),
    #[error("no S-set of type {0} in the envelope")]
    EnvelopeIncomplete(usize),
    #[error("blocks of layer {0} overlap")]
    OverlappingBlocks(usize),
    #[error(transparent)]
    Trail(#[from] TrailError),
    #[error(transparent)]
    SGraph(#[from] SGraphError),
}

/// Forensic record of a failed step.
#[derive(Debug, Clone, Serialize)]
pub struct FalseTrail {
    pub layer: usize,
    pub check: &'static str,
    pub reason: String,
    pub offending: LinearFunctionBJ,
    pub nearest_block: Option<NearestBlock>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NearestBlock {
    pub s: usize,
    pub c: Vec<i64>,
    pub driving: LinearFunctionBJ,
    /// L¹ distance from the offending function to the closest block point.
    pub distance: i64,
}

/// One class `T_s(e)` at a step, with its S-set and integer points.
#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeClass {
    pub s: usize,
    pub signature: Vec<u64>,
    pub a: Vec<i64>,
    pub c: Vec<i64>,
    pub driving: LinearFunctionBJ,
    /// `Z(e)`.
    pub z_vertices: Vec<LinearFunctionBJ>,
    /// `Z⁻(e)`: the vertex functions with `c′_{n−1} = 0`.
    pub z_minus: Vec<LinearFunctionBJ>,
    /// `K_Z(e)`.
    pub kz: Vec<LinearFunctionBJ>,
    /// `K⁻_Z(e)`: points with `c′_{n−1} = 0`.
    pub kz_minus: Vec<LinearFunctionBJ>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeLayer {
    pub j: usize,
    pub s: usize,
    pub classes: Vec<EnvelopeClass>,
    /// Whether the singleton `{z_t^1}` is carried as its own block.
    pub carries_driving: bool,
    pub functions: BTreeSet<LinearFunctionBJ>,
    /// Containment of layer `j−1` in the `K⁻_Z` blocks of this layer.
    pub check_54: bool,
}

#[derive(Debug, Clone)]
pub struct Envelope {
    pub frame: TrailFrame,
    /// Layers `j = (t,1), …, m`.
    pub layers: Vec<EnvelopeLayer>,
    /// For each node `s`, the classes of the last layer with respect to a
    /// virtual occurrence of `s` at position `m+1`.
    pub closing: Vec<Vec<EnvelopeClass>>,
}

#[derive(Debug, Clone, Default)]
pub struct EnvelopeOptions {
    /// Extra functions inserted into layer `j` after it is built.
    pub inject: Vec<(usize, LinearFunctionBJ)>,
}

pub fn construct_envelope(module: &LowestWeightModule, frame: &TrailFrame) -> Result<Envelope, EnvelopeError> {
    construct_envelope_with(module, frame, &EnvelopeOptions::default())
}

pub fn construct_envelope_with(
    module: &LowestWeightModule,
    frame: &TrailFrame,
    options: &EnvelopeOptions,
) -> Result<Envelope, EnvelopeError> {
    let first = frame.first_t();
    let driving = frame.trail_function(frame.driving_trail());
    let mut layers = Vec::new();
    let mut current = EnvelopeLayer {
        j: first,
        s: frame.t(),
        classes: Vec::new(),
        carries_driving: true,
        functions: BTreeSet::from([driving.clone()]),
        check_54: true,
    };
    inject(&mut current, options);
    for j in first + 1..=frame.m() {
        let next = build_layer(module, frame, &current, j, &driving)?;
        layers.push(std::mem::replace(&mut current, next));
        inject(&mut current, options);
    }
    layers.push(current);
    let closing = (0..frame.cartan().rank())
        .map(|s| closing_classes(frame, &layers.last().expect("non-empty").functions, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Envelope { frame: frame.clone(), layers, closing })
}

fn inject(layer: &mut EnvelopeLayer, options: &EnvelopeOptions) {
    for (j, f) in &options.inject {
        if *j == layer.j {
            layer.functions.insert(f.clone());
        }
    }
}

fn build_layer(
    module: &LowestWeightModule,
    frame: &TrailFrame,
    previous: &EnvelopeLayer,
    j: usize,
    driving: &LinearFunctionBJ,
) -> Result<EnvelopeLayer, EnvelopeError> {
    let s = frame.word().letter(j);
    let mut trails: Vec<Trail> = Vec::new();
    let mut rejected: Vec<(LinearFunctionBJ, String)> = Vec::new();
    for f in &previous.functions {
        match frame.trail_from_function(f) {
            Some(trail) if trail.phi < j => match frame.realize(module, &trail) {
                Ok(_) => trails.push(trail),
                Err(e) => rejected.push((f.clone(), format!("monomial vector vanishes: {e}"))),
            },
            Some(_) => rejected.push((f.clone(), "function is not supported in [1, j-1]".into())),
            None => rejected.push((f.clone(), "function does not decode to a trail".into())),
        }
    }
    let refs: Vec<&Trail> = trails.iter().collect();
    let ts_classes = group_ts_classes(frame, &refs, j).map_err(|e| {
        false_trail(j, "54", format!("class data inconsistent: {e}"), previous.functions.iter().next().cloned().unwrap_or_default(), None)
    })?;
    let mut classes = Vec::with_capacity(ts_classes.len());
    for class in &ts_classes {
        classes.push(envelope_class(frame, class)?);
    }
    if let Some((f, reason)) = rejected.into_iter().next() {
        let nearest = nearest_block(&classes, &f);
        return Err(false_trail(j, "54", reason, f, nearest));
    }
    if let Some((f, cp)) = outside_k_minus(frame, &ts_classes).into_iter().next() {
        let nearest = nearest_block(&classes, &f);
        return Err(false_trail(j, "54", format!("c′ = {cp:?} lies outside K⁻(c)"), f, nearest));
    }
    let carries_driving = s == frame.t();
    let mut functions = BTreeSet::new();
    if carries_driving {
        functions.insert(driving.clone());
    }
    for class in &classes {
        for f in &class.kz {
            let Some(trail) = frame.trail_from_function(f) else {
                return Err(false_trail(j, "55", "block point does not decode to a trail".into(), f.clone(), Some(block_of(class, 0))));
            };
            if let Err(e) = frame.realize(module, &trail) {
                return Err(false_trail(j, "55", format!("monomial vector vanishes: {e}"), f.clone(), Some(block_of(class, 0))));
            }
            if !functions.insert(f.clone()) {
                return Err(EnvelopeError::OverlappingBlocks(j));
            }
        }
    }
    Ok(EnvelopeLayer { j, s, classes, carries_driving, functions, check_54: true })
}

/// Members of the given classes whose `c′` is not a point of `K⁻_Z(c)`.
fn outside_k_minus(frame: &TrailFrame, classes: &[TsClass]) -> Vec<(LinearFunctionBJ, Vec<i64>)> {
    let mut out = Vec::new();
    for class in classes {
        let c = CoeffVector::new(class.c.clone()).expect("c is non-negative");
        for (member, cp) in class.members.iter().zip(&class.c_prime) {
            if !polytope_membership(&c, cp) || cp.last().is_some_and(|&x| x != 0) {
                out.push((frame.trail_function(member), cp.clone()));
            }
        }
    }
    out
}

/// The envelope read off a complete trail enumeration: layer `j` is the set
/// of enumerated trails with `φ ≤ j` and the classes are those of layer
/// `j−1`. Nothing is rejected; the flag `check_54` records whether every
/// member of layer `j−1` lies in the `K⁻_Z` blocks. This is the reference
/// the inductive construction is compared with, and it stays available when
/// the construction stops at a failed step.
pub fn envelope_from_trails(set: &TrailSet) -> Result<Envelope, EnvelopeError> {
    let frame = &set.frame;
    let first = frame.first_t();
    let mut layers = Vec::new();
    for j in first..=frame.m() {
        let functions: BTreeSet<_> = set.layer_functions(j).into_iter().collect();
        let (classes, check_54) = if j == first {
            (Vec::new(), true)
        } else {
            let ts_classes = group_ts_classes(frame, &set.layer(j - 1), j)?;
            let classes = ts_classes.iter().map(|c| envelope_class(frame, c)).collect::<Result<Vec<_>, _>>()?;
            (classes, outside_k_minus(frame, &ts_classes).is_empty())
        };
        let s = frame.word().letter(j);
        layers.push(EnvelopeLayer { j, s, classes, carries_driving: s == frame.t(), functions, check_54 });
    }
    let last = &layers.last().expect("(t,1) ≤ m").functions;
    let closing = (0..frame.cartan().rank()).map(|s| closing_classes(frame, last, s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Envelope { frame: frame.clone(), layers, closing })
}

fn false_trail(
    layer: usize,
    check: &'static str,
    reason: String,
    offending: LinearFunctionBJ,
    nearest_block: Option<NearestBlock>,
) -> EnvelopeError {
    EnvelopeError::FalseTrailDetected(Box::new(FalseTrail { layer, check, reason, offending, nearest_block }))
}

fn block_of(class: &EnvelopeClass, distance: i64) -> NearestBlock {
    NearestBlock { s: class.s, c: class.c.clone(), driving: class.driving.clone(), distance }
}

fn l1(f: &LinearFunctionBJ, g: &LinearFunctionBJ) -> i64 {
    f.sub(g).iter().map(|(_, c)| c.abs()).sum()
}

fn nearest_block(classes: &[EnvelopeClass], f: &LinearFunctionBJ) -> Option<NearestBlock> {
    classes.iter().filter_map(|class| class.kz_minus.iter().map(|g| l1(f, g)).min().map(|d| block_of(class, d))).min_by_key(|b| b.distance)
}

fn envelope_class(frame: &TrailFrame, class: &TsClass) -> Result<EnvelopeClass, EnvelopeError> {
    let (cartan, word, s) = (frame.cartan(), frame.word(), class.s);
    let driving = frame.trail_function(class.l_min());
    let c = CoeffVector::new(class.c.clone()).expect("class lemmas give c ≥ 0");
    let graph = binary_fusion(&c)?;
    let expand = |tuple: &[i64]| expand_function(cartan, word, s, &driving, tuple);
    let z_vertices = graph.vertex_functions().iter().map(|x| expand(x)).collect::<Result<Vec<_>, _>>()?;
    let z_minus = minus_vertex_tuples(&graph).iter().map(|x| expand(x)).collect::<Result<Vec<_>, _>>()?;
    let points = integer_points(&c);
    let kz = points.iter().map(|x| expand(x)).collect::<Result<Vec<_>, _>>()?;
    let kz_minus = points.iter().filter(|x| x.last().is_none_or(|&v| v == 0)).map(|x| expand(x)).collect::<Result<Vec<_>, _>>()?;
    Ok(EnvelopeClass {
        s,
        signature: class.signature.clone(),
        a: class.a.clone(),
        c: class.c.clone(),
        driving,
        z_vertices,
        z_minus,
        kz,
        kz_minus,
    })
}

/// Vertex tuples with `c′_{n−1} = 0`. The constraint `c′_{n−1} ≥ 0` cuts
/// out a face of `K(c)`, so these are exactly the extremal points of `K⁻(c)`.
fn minus_vertex_tuples(graph: &SGraph) -> BTreeSet<Vec<i64>> {
    graph.vertex_functions().into_iter().filter(|x| x.last().is_none_or(|&v| v == 0)).collect()
}

/// Classes of the functions in `last` for a virtual letter `s` appended at
/// position `m+1`. The virtual Kashiwara function `r_s^{n}` vanishes on
/// `B_J`. Every trail has `n_{m+1} = 0`, so only `K⁻_Z(c)` and `Z⁻(c)` can
/// consist of trail functions.
fn closing_classes(frame: &TrailFrame, last: &BTreeSet<LinearFunctionBJ>, s: usize) -> Result<Vec<EnvelopeClass>, EnvelopeError> {
    let (cartan, word, m) = (frame.cartan(), frame.word(), frame.m());
    let real = word.positions_of(s);
    let n = real.len() + 1;
    let driving_trail = frame.driving_trail();
    let mut groups: std::collections::BTreeMap<Vec<u64>, Vec<Trail>> = Default::default();
    for f in last {
        let trail = frame.trail_from_function(f).ok_or_else(|| TrailError::ClassInvariant(format!("{f} is not a trail function")))?;
        if s == frame.t() && &trail == driving_trail {
            continue;
        }
        let signature = (1..=m).filter(|&p| word.letter(p) != s).map(|p| trail.exp_at(p)).collect();
        groups.entry(signature).or_default().push(trail);
    }
    let faces: Vec<LinearFunctionBJ> = (1..n)
        .map(|i| {
            let upper = if i < real.len() { kashiwara_function(cartan, word, s, i + 1)? } else { LinearFunctionBJ::zero() };
            Ok(kashiwara_function(cartan, word, s, i)?.sub(&upper))
        })
        .collect::<Result<_, TrailError>>()?;
    let expand =
        |driving: &LinearFunctionBJ, x: &[i64]| x.iter().zip(&faces).fold(driving.clone(), |acc, (&v, face)| acc.add_scaled(face, v));
    let mut out = Vec::new();
    for (signature, mut members) in groups {
        let k_of = |t: &Trail| real.iter().map(|&p| t.exp_at(p) as i64).collect::<Vec<_>>();
        members.sort_by_key(|t| k_of(t));
        let first = &members[0];
        let bounds: Vec<usize> = real.iter().copied().chain([m + 1]).collect();
        let mut a = vec![-first.gamma_at(bounds[0]).pairing(s)];
        for w in bounds.windows(2) {
            a.push(-(w[0] + 1..w[1]).map(|p| first.exp_at(p) as i64 * cartan.entry(s, word.letter(p))).sum::<i64>());
        }
        let l = k_of(first);
        let prefix = |v: &[i64], upto: usize| v[..upto.min(v.len())].iter().sum::<i64>();
        let c: Vec<i64> = (1..n).map(|i| prefix(&a, i) - prefix(&l, i) - prefix(&l, i - 1)).collect();
        let coeffs = CoeffVector::new(c.clone()).map_err(|e| TrailError::ClassInvariant(format!("closing class for s={s}: {e}")))?;
        let driving = frame.trail_function(first);
        let graph = binary_fusion(&coeffs)?;
        let points = integer_points(&coeffs);
        out.push(EnvelopeClass {
            s,
            signature,
            a,
            c,
            z_vertices: graph.vertex_functions().iter().map(|x| expand(&driving, x)).collect(),
            z_minus: minus_vertex_tuples(&graph).iter().map(|x| expand(&driving, x)).collect(),
            kz: points.iter().map(|x| expand(&driving, x)).collect(),
            kz_minus: points.iter().filter(|x| x.last().is_none_or(|&v| v == 0)).map(|x| expand(&driving, x)).collect(),
            driving,
        });
    }
    Ok(out)
}

impl Envelope {
    pub fn t(&self) -> usize {
        self.frame.t()
    }

    pub fn layer(&self, j: usize) -> Option<&EnvelopeLayer> {
        self.layers.iter().find(|l| l.j == j)
    }

    /// All functions of the envelope: the last layer.
    pub fn functions(&self) -> &BTreeSet<LinearFunctionBJ> {
        &self.layers.last().expect("at least one layer").functions
    }

    fn driving(&self) -> LinearFunctionBJ {
        self.frame.trail_function(self.frame.driving_trail())
    }

    /// `Z(e)` for the classes of layer `j`, plus `{z_t^1}` when carried.
    pub fn s_sets(&self, j: usize) -> BTreeSet<LinearFunctionBJ> {
        let Some(layer) = self.layer(j) else { return BTreeSet::new() };
        let mut out: BTreeSet<_> = layer.classes.iter().flat_map(|c| c.z_vertices.iter().cloned()).collect();
        if layer.carries_driving {
            out.insert(self.driving());
        }
        out
    }

    fn minus_blocks(&self, j: usize, vertices_only: bool) -> BTreeSet<LinearFunctionBJ> {
        let Some(layer) = self.layer(j) else { return BTreeSet::new() };
        let mut out: BTreeSet<_> =
            layer.classes.iter().flat_map(|c| if vertices_only { c.z_minus.iter() } else { c.kz_minus.iter() }.cloned()).collect();
        if layer.carries_driving {
            out.insert(self.driving());
        }
        out
    }

    /// The S-sets of type `s` met at the steps `j` with `i_j = s`, with
    /// `{z_t^1}` when `s = t`.
    pub fn z_t_steps(&self, s: usize) -> BTreeSet<LinearFunctionBJ> {
        let mut out: BTreeSet<_> =
            self.layers.iter().filter(|l| l.s == s).flat_map(|l| l.classes.iter().flat_map(|c| c.z_vertices.iter().cloned())).collect();
        if s == self.t() {
            out.insert(self.driving());
        }
        out
    }

    /// `Z_t(s)`: [`Envelope::z_t_steps`] together with `Z⁻(c)` of the closing
    /// classes, which cover the trails trivializing after the last `s`.
    pub fn z_t(&self, s: usize) -> BTreeSet<LinearFunctionBJ> {
        let mut out = self.z_t_steps(s);
        out.extend(self.closing[s].iter().flat_map(|c| c.z_minus.iter().cloned()));
        out
    }

    /// Whether every layer equals the enumerated trails trivializing at the
    /// same prefix, and each class equals its `K_Z(c)`.
    pub fn matches_enumeration(&self, set: &TrailSet) -> bool {
        self.layers.iter().all(|layer| {
            let enumerated: BTreeSet<_> = set.layer_functions(layer.j).into_iter().collect();
            enumerated == layer.functions
        })
    }
}

/// Per-step outcome of the containment checks.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructibilityEntry {
    pub j: usize,
    pub check_54: bool,
    pub check_56: bool,
    pub check_57: bool,
    /// Functions of the left-hand side missing from the right-hand side.
    pub missing_56: Vec<LinearFunctionBJ>,
    pub missing_57: Vec<LinearFunctionBJ>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructibilityReport {
    pub j1: usize,
    pub entries: Vec<ConstructibilityEntry>,
}

impl ConstructibilityReport {
    pub fn passes_56(&self) -> bool {
        self.entries.iter().all(|e| e.check_54 && e.check_56)
    }

    pub fn passes_57(&self) -> bool {
        self.entries.iter().all(|e| e.check_54 && e.check_57)
    }
}

/// For each step `j` with `(t,1) ≤ j < j1`, tests whether the S-sets of
/// layer `j` lie in the `K⁻_Z` blocks (for the second check, the `Z⁻`
/// vertex sets) of layer `j+1`.
pub fn check_constructibility(env: &Envelope, j1: usize) -> ConstructibilityReport {
    let entries = env
        .layers
        .iter()
        .filter(|l| l.j < j1 && env.layer(l.j + 1).is_some())
        .map(|layer| {
            let lhs = env.s_sets(layer.j);
            let next = env.layer(layer.j + 1).expect("filtered above");
            let blocks = env.minus_blocks(layer.j + 1, false);
            let vertices = env.minus_blocks(layer.j + 1, true);
            let missing_56: Vec<_> = lhs.iter().filter(|f| !blocks.contains(*f)).cloned().collect();
            let missing_57: Vec<_> = lhs.iter().filter(|f| !vertices.contains(*f)).cloned().collect();
            ConstructibilityEntry {
                j: layer.j,
                check_54: next.check_54,
                check_56: missing_56.is_empty(),
                check_57: missing_57.is_empty(),
                missing_56,
                missing_57,
            }
        })
        .collect();
    ConstructibilityReport { j1, entries }
}

/// `max_{z ∈ Z_t(s)} z(b)`.
pub fn epsilon_star(env: &Envelope, s: usize, b: &BJElement) -> Result<i64, EnvelopeError> {
    let point = b.dense(env.frame.m());
    env.z_t(s).iter().map(|z| z.eval(&point)).max().ok_or(EnvelopeError::EnvelopeIncomplete(s))
}

/// `max_K z^K(b)` over every function of the envelope.
pub fn max_over_trails(env: &Envelope, b: &BJElement) -> i64 {
    let point = b.dense(env.frame.m());
    env.functions().iter().map(|z| z.eval(&point)).max().unwrap_or(0)
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalityReport {
    /// Extremal points of the envelope.
    pub extremal: Vec<LinearFunctionBJ>,
    pub per_s: Vec<ExtremalityForS>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalityForS {
    pub s: usize,
    pub z_size: usize,
    /// `E(𝒦_t) ⊂ Z_t(s)`.
    pub contained: bool,
    pub equal: bool,
}

/// Compares the extremal points of the envelope with each `Z_t(s)`. This
/// is observational: nothing here is asserted.
pub fn extremality_report(env: &Envelope) -> ExtremalityReport {
    let m = env.frame.m();
    let functions: Vec<&LinearFunctionBJ> = env.functions().iter().collect();
    let dense: Vec<Vec<i64>> = functions.iter().map(|f| f.dense(m)).collect();
    let extremal: BTreeSet<LinearFunctionBJ> = extreme_points(&dense).iter().map(|d| LinearFunctionBJ::from_dense(d)).collect();
    let per_s = (0..env.frame.cartan().rank())
        .map(|s| {
            let z = env.z_t(s);
            ExtremalityForS { s, z_size: z.len(), contained: extremal.is_subset(&z), equal: extremal == z }
        })
        .collect();
    ExtremalityReport { extremal: extremal.into_iter().collect(), per_s }
}

/// One run of the discard rule on the functions of layer `j−1` for
/// `s = i_j`: candidate coefficient tuples are read off functions with
/// non-positive `m_{(s,k)}` coefficients, processed in increasing order, and
/// dropped when the candidate already lies in an accepted S-set.
#[derive(Debug, Clone, Serialize)]
pub struct DiscardRun {
    pub j: usize,
    pub s: usize,
    pub candidates: usize,
    pub accepted: Vec<LinearFunctionBJ>,
    pub discarded: Vec<LinearFunctionBJ>,
    /// Whether the accepted drivings are exactly the ℓ-minimal functions.
    pub agrees_with_classes: bool,
}

pub fn discard_rule(env: &Envelope, j: usize) -> Result<Option<DiscardRun>, EnvelopeError> {
    let (Some(previous), Some(layer)) = (env.layer(j - 1), env.layer(j)) else {
        return Ok(None);
    };
    let frame = &env.frame;
    let (cartan, word) = (frame.cartan(), frame.word());
    let s = word.letter(j);
    let n = word.count_upto(s, j);
    let positions = &word.positions_of(s)[..n];
    let driving = env.driving();
    let mut candidates: Vec<(LinearFunctionBJ, Vec<i64>)> = previous
        .functions
        .iter()
        .filter(|f| !(s == frame.t() && **f == driving))
        .filter_map(|f| {
            let coeffs: Vec<i64> = positions.iter().map(|&p| f.coeff(p)).collect();
            coeffs.iter().all(|&x| x <= 0).then(|| (f.clone(), coeffs[..n - 1].iter().map(|x| -x).collect()))
        })
        .collect();
    let weight = |f: &LinearFunctionBJ| positions.iter().map(|&p| f.coeff(p)).sum::<i64>();
    candidates.sort_by(|x, y| weight(&x.0).cmp(&weight(&y.0)).then_with(|| x.0.cmp(&y.0)));
    let total = candidates.len();
    let mut accepted: Vec<(LinearFunctionBJ, BTreeSet<LinearFunctionBJ>)> = Vec::new();
    let mut discarded = Vec::new();
    for (f, c) in candidates {
        if accepted.iter().any(|(_, set)| set.contains(&f)) {
            discarded.push(f);
            continue;
        }
        let graph = binary_fusion(&CoeffVector::new(c).expect("non-negative by filter"))?;
        let set = graph.vertex_functions().iter().map(|x| expand_function(cartan, word, s, &f, x)).collect::<Result<BTreeSet<_>, _>>()?;
        accepted.push((f, set));
    }
    let from_classes: BTreeSet<_> = layer.classes.iter().map(|c| c.driving.clone()).collect();
    let accepted: Vec<_> = accepted.into_iter().map(|(f, _)| f).collect();
    let agrees = accepted.iter().cloned().collect::<BTreeSet<_>>() == from_classes;
    Ok(Some(DiscardRun { j, s, candidates: total, accepted, discarded, agrees_with_classes: agrees }))
}

/// JSON report: `{"t", "layers": [{"j", "classes": [...], "checks": {...}}]}`
/// with node labels in place of 0-based indices.
#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeReport {
    pub t: u32,
    pub layers: Vec<LayerReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LayerReport {
    pub j: usize,
    pub classes: Vec<ClassReport>,
    pub checks: LayerChecks,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub s: u32,
    pub a: Vec<i64>,
    pub c: Vec<i64>,
    pub z_vertices: Vec<LinearFunctionBJ>,
    pub kz_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LayerChecks {
    #[serde(rename = "54")]
    pub c54: bool,
    #[serde(rename = "56")]
    pub c56: bool,
    #[serde(rename = "57")]
    pub c57: bool,
}

pub fn envelope_report(env: &Envelope) -> EnvelopeReport {
    let cartan = env.frame.cartan();
    let checks = check_constructibility(env, env.frame.m() + 1);
    let layers = env
        .layers
        .iter()
        .map(|layer| {
            let entry = checks.entries.iter().find(|e| e.j == layer.j);
            LayerReport {
                j: layer.j,
                classes: layer
                    .classes
                    .iter()
                    .map(|c| ClassReport {
                        s: cartan.label(c.s),
                        a: c.a.clone(),
                        c: c.c.clone(),
                        z_vertices: c.z_vertices.clone(),
                        kz_size: c.kz.len(),
                    })
                    .collect(),
                checks: LayerChecks { c54: layer.check_54, c56: entry.is_none_or(|e| e.check_56), c57: entry.is_none_or(|e| e.check_57) },
            }
        })
        .collect();
    EnvelopeReport { t: cartan.label(env.t()), layers }
}
