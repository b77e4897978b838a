//! The `trailcone` command line: `enumerate`, `sgraph` and `verify`.
//!
//! Every command reads a [`JobConfig`] and writes JSON (and, for `sgraph`,
//! DOT) into the `--out` directory. Reports contain no timings or paths, so
//! a fixed config always produces the same bytes.
//!
//! Exit codes: 0 success, 2 configuration error, 3 Cartan matrix not of
//! finite type, 4 a checked contract failed, 5 a false trail was detected.

use crate::cartan::{CartanData, Weight, WordJ};
use crate::config::{node, ConfigError, Instance, JobConfig, DEFAULT_DEPTH};
use crate::crystal::{crystal_f, generate_binf, BJElement, Convention};
use crate::giant::{
    check_constructibility, construct_envelope_with, discard_rule, envelope_from_trails, envelope_report, epsilon_star, extremality_report,
    max_over_trails, ConstructibilityEntry, DiscardRun, Envelope, EnvelopeError, EnvelopeOptions, EnvelopeReport, ExtremalityReport,
    FalseTrail,
};
use crate::hull::extreme_points;
use crate::rep::LowestWeightModule;
use crate::sgraph::{binary_fusion, integer_points, line_count, neighbor_graph, CoeffVector, SEdge};
use crate::sl2::{coefficient_value, shift_system_rank, vanishing_identity, RecurrenceTable, Sl2Config};
use crate::trails::{enumerate_trails, group_ts_classes, minimax_decompose, rigidify, LinearFunctionBJ, TrailError, TrailFrame, TrailSet};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

pub const CACHE_ENV: &str = "TRAILCONE_CACHE";

#[derive(Debug, Parser)]
#[command(name = "trailcone", version, about = "Trails, S-graphs and dual Kashiwara parameters for fundamental modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Job file (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for reports; created if missing.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Number of lowering steps for the crystal sweep.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub convention: Option<Convention>,
    /// Which checks `verify` runs.
    #[arg(long, global = true, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Dump all trails of each fundamental module.
    Enumerate,
    /// Build the S-graph of a coefficient tuple or of a class of trails.
    Sgraph,
    /// Run the verification suites.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Sl2,
    Sgraph,
    Trails,
    Envelope,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(ConfigError::NotFiniteType) => 3,
            CliError::Config(_) | CliError::Output { .. } => 2,
            CliError::Internal(_) => 4,
        }
    }
}

fn internal(e: impl ToString) -> CliError {
    CliError::Internal(e.to_string())
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs one command and returns its exit code.
pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let path = cli.config.as_ref().ok_or(ConfigError::Field { field: "--config", message: "required".into() })?;
    let config = JobConfig::from_path(path)?;
    match cli.command {
        Command::Enumerate => cmd_enumerate(cli, &config),
        Command::Sgraph => cmd_sgraph(cli, &config),
        Command::Verify => cmd_verify(cli, &config),
    }
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let err = |e: std::io::Error| CliError::Output { path: dir.join(name).display().to_string(), message: e.to_string() };
    std::fs::create_dir_all(dir).map_err(err)?;
    std::fs::write(dir.join(name), contents).map_err(err)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn load_module(cartan: &CartanData, t: usize) -> Result<LowestWeightModule, CliError> {
    let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    LowestWeightModule::load_or_build(cache.as_deref(), cartan, t).map_err(internal)
}

fn labels(cartan: &CartanData, word: &WordJ) -> Vec<u32> {
    word.letters().iter().map(|&i| cartan.label(i)).collect()
}

/// The Weyl group orbit of `lambda`.
fn orbit(cartan: &CartanData, lambda: &Weight) -> BTreeSet<Weight> {
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..cartan.rank() {
            let next = cartan.reflect(i, &w);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

#[derive(Serialize)]
struct TrailDump {
    cartan: Vec<Vec<i64>>,
    word: Vec<u32>,
    modules: Vec<ModuleDump>,
}

#[derive(Serialize)]
struct ModuleDump {
    t: u32,
    dim: usize,
    trail_count: usize,
    counts_by_phi: Vec<PhiCount>,
    /// Trails passing through a weight outside the orbit of the lowest weight.
    non_extremal: usize,
    trails: Vec<TrailRecord>,
}

#[derive(Serialize)]
struct PhiCount {
    phi: usize,
    count: usize,
}

#[derive(Serialize)]
struct TrailRecord {
    exps: Vec<u64>,
    phi: usize,
    function: String,
    weights: Vec<Weight>,
    extremal: bool,
}

fn enumerate_for(inst: &Instance, t: usize) -> Result<(LowestWeightModule, TrailSet), CliError> {
    let module = load_module(&inst.cartan, t)?;
    let frame = TrailFrame::new(&inst.cartan, &inst.word, t).map_err(internal)?;
    let set = enumerate_trails(&module, &frame).map_err(internal)?;
    Ok((module, set))
}

pub fn cmd_enumerate(cli: &Cli, config: &JobConfig) -> Result<u8, CliError> {
    let inst = Instance::from_config(config)?;
    let mut modules = Vec::new();
    for &t in &inst.ts {
        let (module, set) = enumerate_for(&inst, t)?;
        let lowest = Weight::fundamental(inst.cartan.rank(), t).neg();
        let extremal_weights = orbit(&inst.cartan, &lowest);
        let trails: Vec<TrailRecord> = set
            .trails
            .iter()
            .map(|k| TrailRecord {
                exps: k.exps.clone(),
                phi: k.phi,
                function: set.frame.trail_function(k).to_string(),
                weights: k.gamma.clone(),
                extremal: k.gamma.iter().all(|g| extremal_weights.contains(g)),
            })
            .collect();
        let dump = ModuleDump {
            t: inst.cartan.label(t),
            dim: module.dim(),
            trail_count: trails.len(),
            counts_by_phi: set.counts_by_phi().into_iter().map(|(phi, count)| PhiCount { phi, count }).collect(),
            non_extremal: trails.iter().filter(|r| !r.extremal).count(),
            trails,
        };
        let phis: Vec<String> = dump.counts_by_phi.iter().map(|p| format!("{}:{}", p.phi, p.count)).collect();
        println!("t={} dim={} trails={} non-extremal={} by phi {}", dump.t, dump.dim, dump.trail_count, dump.non_extremal, phis.join(" "));
        modules.push(dump);
    }
    let dump = TrailDump { cartan: inst.cartan.gcm().to_vec(), word: labels(&inst.cartan, &inst.word), modules };
    write_out(&cli.out, "trails.json", &to_json(&dump))?;
    Ok(0)
}

#[derive(Serialize)]
struct SGraphDump {
    c: Vec<i64>,
    source: &'static str,
    vertices: Vec<VertexRecord>,
    edges: Vec<SEdge>,
    pointed_chain: Vec<usize>,
    integer_points: usize,
    lines: Vec<LineTable>,
}

#[derive(Serialize)]
struct VertexRecord {
    id: usize,
    label: usize,
    function: Vec<i64>,
}

/// Integer points on each line of `K(c)` parallel to coordinate `u`, lines
/// ordered by their remaining coordinates.
#[derive(Serialize)]
struct LineTable {
    u: usize,
    counts: Vec<usize>,
}

fn selected_c(config: &JobConfig) -> Result<(Vec<i64>, &'static str), CliError> {
    match (&config.c, &config.class) {
        (Some(_), Some(_)) => Err(ConfigError::Field { field: "c", message: "give either `c` or `class`, not both".into() }.into()),
        (Some(c), None) => Ok((c.clone(), "c")),
        (None, Some(sel)) => {
            let inst = Instance::from_config(config)?;
            let t = node(&inst.cartan, "class.t", sel.t)?;
            let (_, set) = enumerate_for(&inst, t)?;
            let first = set.frame.first_t();
            if sel.j < first || sel.j > inst.word.len() {
                return Err(ConfigError::Field {
                    field: "class.j",
                    message: format!("{} is outside [{first}, {}]", sel.j, inst.word.len()),
                }
                .into());
            }
            let classes = group_ts_classes(&set.frame, &set.layer(sel.j), sel.j).map_err(internal)?;
            let class = classes.get(sel.index).ok_or_else(|| ConfigError::Field {
                field: "class.index",
                message: format!("{} classes at j = {}, index {} requested", classes.len(), sel.j, sel.index),
            })?;
            Ok((class.c.clone(), "class"))
        }
        (None, None) => Err(ConfigError::Field { field: "c", message: "missing; give `c` or `class`".into() }.into()),
    }
}

pub fn cmd_sgraph(cli: &Cli, config: &JobConfig) -> Result<u8, CliError> {
    let (values, source) = selected_c(config)?;
    let c = CoeffVector::new(values.clone()).map_err(|e| ConfigError::Field { field: "c", message: e.to_string() })?;
    let graph = binary_fusion(&c).map_err(internal)?;
    let points = integer_points(&c);
    let mut lines = Vec::new();
    for u in 1..=values.len() {
        let mut by_line: BTreeMap<Vec<i64>, &Vec<i64>> = BTreeMap::new();
        for p in &points {
            let mut key = p.clone();
            key.remove(u - 1);
            by_line.entry(key).or_insert(p);
        }
        let counts = by_line.values().map(|p| line_count(&c, p, u)).collect::<Result<Vec<_>, _>>().map_err(internal)?;
        lines.push(LineTable { u, counts });
    }
    let dump = SGraphDump {
        c: values,
        source,
        vertices: graph.vertices.iter().enumerate().map(|(id, v)| VertexRecord { id, label: v.label, function: v.f.clone() }).collect(),
        edges: graph.edges.clone(),
        pointed_chain: graph.pointed_chain.clone(),
        integer_points: points.len(),
        lines,
    };
    println!("c={:?} vertices={} edges={} integer points={}", dump.c, dump.vertices.len(), dump.edges.len(), dump.integer_points);
    write_out(&cli.out, "sgraph.dot", &graph.to_dot())?;
    write_out(&cli.out, "sgraph.json", &to_json(&dump))?;
    Ok(0)
}

#[derive(Serialize, Default)]
struct VerifyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    sl2: Option<Sl2Suite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sgraph: Option<SGraphSuite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trails: Option<Vec<TrailsSuite>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    envelope: Option<Vec<EnvelopeSuite>>,
    false_trails: Vec<Forensic>,
    failures: Vec<String>,
    exit_code: u8,
}

#[derive(Serialize)]
struct Sl2Suite {
    coefficients_compared: usize,
    coefficient_mismatches: usize,
    vanishing_evaluated: usize,
    vanishing_nonzero: usize,
    shift_rank_deficient: usize,
}

#[derive(Serialize)]
struct SGraphSuite {
    tuples: usize,
    /// Tuples whose S-graph fails a structural check or disagrees with the
    /// extremal points of `K_Z(c)`.
    failing: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct TrailsSuite {
    t: u32,
    trails: usize,
    classes: usize,
    without_maximal: usize,
    min_not_l_min: usize,
}

#[derive(Serialize)]
struct EnvelopeSuite {
    t: u32,
    /// `constructed` when the inductive construction succeeded; otherwise
    /// the checks below run on the envelope read off the enumeration.
    source: &'static str,
    matches_enumeration: bool,
    layers: EnvelopeReport,
    constructibility: Vec<ConstructibilityEntry>,
    passes_56: bool,
    passes_57: bool,
    epsilon_star: StarSweep,
    extremality: ExtremalityRecord,
    discard: Vec<DiscardRecord>,
}

#[derive(Serialize)]
struct ExtremalityRecord {
    extremal: Vec<LinearFunctionBJ>,
    per_s: Vec<ExtremalityRow>,
}

#[derive(Serialize)]
struct ExtremalityRow {
    s: u32,
    z_size: usize,
    contained: bool,
    equal: bool,
}

impl ExtremalityRecord {
    fn new(cartan: &CartanData, report: ExtremalityReport) -> Self {
        let per_s = report
            .per_s
            .into_iter()
            .map(|r| ExtremalityRow { s: cartan.label(r.s), z_size: r.z_size, contained: r.contained, equal: r.equal })
            .collect();
        ExtremalityRecord { extremal: report.extremal, per_s }
    }
}

#[derive(Serialize)]
struct DiscardRecord {
    j: usize,
    s: u32,
    candidates: usize,
    accepted: Vec<LinearFunctionBJ>,
    discarded: Vec<LinearFunctionBJ>,
    agrees_with_classes: bool,
}

impl DiscardRecord {
    fn new(cartan: &CartanData, run: DiscardRun) -> Self {
        DiscardRecord {
            j: run.j,
            s: cartan.label(run.s),
            candidates: run.candidates,
            accepted: run.accepted,
            discarded: run.discarded,
            agrees_with_classes: run.agrees_with_classes,
        }
    }
}

#[derive(Serialize)]
struct StarSweep {
    convention: Convention,
    depth: usize,
    elements: usize,
    escapes: usize,
    s_dependent: usize,
    /// Elements `b` with `ε*_t(f̃_t b) < ε*_t(b)`.
    decreasing_along_t: usize,
}

/// A detected false trail, with node labels in place of indices.
#[derive(Serialize)]
struct Forensic {
    t: u32,
    layer: usize,
    check: &'static str,
    reason: String,
    offending: LinearFunctionBJ,
    nearest_block: Option<NearestRecord>,
}

#[derive(Serialize)]
struct NearestRecord {
    s: u32,
    c: Vec<i64>,
    driving: LinearFunctionBJ,
    distance: i64,
}

impl Forensic {
    fn new(cartan: &CartanData, t: usize, ft: FalseTrail) -> Self {
        Forensic {
            t: cartan.label(t),
            layer: ft.layer,
            check: ft.check,
            reason: ft.reason,
            offending: ft.offending,
            nearest_block: ft.nearest_block.map(|b| NearestRecord {
                s: cartan.label(b.s),
                c: b.c,
                driving: b.driving,
                distance: b.distance,
            }),
        }
    }
}

pub fn cmd_verify(cli: &Cli, config: &JobConfig) -> Result<u8, CliError> {
    let mut report = VerifyReport::default();
    if cli.suite.includes(Suite::Sl2) {
        let suite = sl2_suite();
        if suite.coefficient_mismatches + suite.vanishing_nonzero + suite.shift_rank_deficient > 0 {
            report.failures.push("sl2 suite".into());
        }
        report.sl2 = Some(suite);
    }
    if cli.suite.includes(Suite::Sgraph) {
        let suite = sgraph_suite()?;
        report.failures.extend(suite.failing.iter().map(|c| format!("S-graph of c = {c:?}")));
        report.sgraph = Some(suite);
    }
    let needs_instance = cli.suite.includes(Suite::Trails) || cli.suite.includes(Suite::Envelope);
    if needs_instance {
        let inst = Instance::from_config(config)?;
        if cli.suite.includes(Suite::Trails) {
            report.trails = Some(inst.ts.iter().map(|&t| trails_suite(&inst, t)).collect::<Result<_, _>>()?);
        }
        if cli.suite.includes(Suite::Envelope) {
            let depth = cli.depth.or(config.depth).unwrap_or(DEFAULT_DEPTH);
            let convention = cli.convention.or(config.convention).unwrap_or_default();
            let mut suites = Vec::new();
            for &t in &inst.ts {
                let options = EnvelopeOptions { inject: inst.injections(config, t)? };
                suites.push(envelope_suite(&inst, t, &options, depth, convention, &mut report)?);
            }
            report.envelope = Some(suites);
        }
    }
    report.exit_code = if !report.false_trails.is_empty() {
        5
    } else if !report.failures.is_empty() {
        4
    } else {
        0
    };
    for forensic in &report.false_trails {
        eprintln!("false trail for t={}:\n{}", forensic.t, to_json(forensic));
    }
    for failure in &report.failures {
        eprintln!("failed: {failure}");
    }
    println!("verify: {} false trail(s), {} failure(s)", report.false_trails.len(), report.failures.len());
    write_out(&cli.out, "verify.json", &to_json(&report))?;
    Ok(report.exit_code)
}

fn tuples(len: usize, max: i64) -> Vec<Vec<i64>> {
    (0..len).fold(vec![Vec::new()], |acc, _| acc.into_iter().flat_map(|p| (0..=max).map(move |x| [p.clone(), vec![x]].concat())).collect())
}

/// Closed form against the recurrence for `n ≤ 2` and entries up to 4; the
/// alternating sum for `u < q ≤ 6` and `p1, p2 ≤ 8`.
fn sl2_suite() -> Sl2Suite {
    let (mut compared, mut mismatches) = (0, 0);
    for n in 1..=2 {
        for a in tuples(n, 4) {
            for l in tuples(n, 4) {
                let mut table = RecurrenceTable::new(&a, &l);
                for k in tuples(n, 4) {
                    let cfg = Sl2Config { a: a.clone(), k: k.clone(), l: l.clone() };
                    compared += 1;
                    mismatches += usize::from(coefficient_value(&cfg) != table.value(&k));
                }
            }
        }
    }
    let (mut evaluated, mut nonzero, mut deficient) = (0, 0, 0);
    for q in 1..=6 {
        for p1 in 0..=8 {
            for p2 in q..=8 {
                for u in 0..q {
                    evaluated += 1;
                    nonzero += usize::from(!vanishing_identity(q, p1, p2, u).is_ok_and(|x| x.is_zero()));
                }
                deficient += usize::from(shift_system_rank(q, p1, p2).ok() != Some(q as usize));
            }
        }
    }
    Sl2Suite {
        coefficients_compared: compared,
        coefficient_mismatches: mismatches,
        vanishing_evaluated: evaluated,
        vanishing_nonzero: nonzero,
        shift_rank_deficient: deficient,
    }
}

/// Every `c` of length at most 3 with entries up to 3.
fn sgraph_suite() -> Result<SGraphSuite, CliError> {
    let mut failing = Vec::new();
    let all: Vec<Vec<i64>> = (0..=3).flat_map(|len| tuples(len, 3)).collect();
    for values in &all {
        let c = CoeffVector::new(values.clone()).map_err(internal)?;
        let ok = match binary_fusion(&c) {
            Ok(graph) => {
                let z = graph.vertex_functions();
                let extreme: BTreeSet<Vec<i64>> = extreme_points(&integer_points(&c)).into_iter().collect();
                let lifts = CoeffVector::all_lifts(values).map_err(internal)?;
                let lift_free = lifts.iter().all(|l| binary_fusion(l).map(|g| g.vertex_functions() == z).unwrap_or(false));
                graph.vertices.len() == 1 << values.len()
                    && extreme == z
                    && lift_free
                    && (1..=graph.n()).all(|j| neighbor_graph(&graph, j).is_connected())
            }
            Err(_) => false,
        };
        if !ok {
            failing.push(values.clone());
        }
    }
    Ok(SGraphSuite { tuples: all.len(), failing })
}

fn trails_suite(inst: &Instance, t: usize) -> Result<TrailsSuite, CliError> {
    let (module, set) = enumerate_for(inst, t)?;
    let frame = &set.frame;
    let (mut classes, mut without_maximal, mut min_not_l_min) = (0, 0, 0);
    for j in frame.first_t()..=frame.m() {
        for class in group_ts_classes(frame, &set.layer(j), j).map_err(internal)? {
            classes += 1;
            match minimax_decompose(&module, frame, &class) {
                Ok(mm) => min_not_l_min += usize::from(!mm.min_is_l_min),
                Err(TrailError::NoMaximalTrail) => without_maximal += 1,
                Err(e) => return Err(internal(e)),
            }
            if !rigidify(&class.l, &class.a).is_rigid() {
                return Err(internal(format!("rigidified class at j = {j} is not rigid")));
            }
        }
    }
    Ok(TrailsSuite { t: inst.cartan.label(t), trails: set.trails.len(), classes, without_maximal, min_not_l_min })
}

fn envelope_suite(
    inst: &Instance,
    t: usize,
    options: &EnvelopeOptions,
    depth: usize,
    convention: Convention,
    report: &mut VerifyReport,
) -> Result<EnvelopeSuite, CliError> {
    let label = inst.cartan.label(t);
    let (module, set) = enumerate_for(inst, t)?;
    let (env, source): (Envelope, _) = match construct_envelope_with(&module, &set.frame, options) {
        Ok(env) => (env, "constructed"),
        Err(EnvelopeError::FalseTrailDetected(ft)) => {
            report.false_trails.push(Forensic::new(&inst.cartan, t, *ft));
            (envelope_from_trails(&set).map_err(internal)?, "enumeration")
        }
        Err(e) => return Err(internal(e)),
    };
    let matches_enumeration = env.matches_enumeration(&set);
    if !matches_enumeration {
        report.failures.push(format!("t={label}: envelope differs from the enumerated trails"));
    }
    let constructibility = check_constructibility(&env, set.frame.m());
    let sweep = star_sweep(inst, &env, t, depth, convention)?;
    if sweep.s_dependent > 0 {
        report.failures.push(format!("t={label}: ε* depends on s for {} element(s)", sweep.s_dependent));
    }
    let extremality = extremality_report(&env);
    if extremality.per_s.iter().any(|row| !row.contained) {
        report.failures.push(format!("t={label}: an extremal point lies outside some Z_t(s)"));
    }
    let mut discard = Vec::new();
    for j in set.frame.first_t() + 1..=set.frame.m() {
        discard.extend(discard_rule(&env, j).map_err(internal)?.map(|run| DiscardRecord::new(&inst.cartan, run)));
    }
    Ok(EnvelopeSuite {
        t: label,
        source,
        matches_enumeration,
        layers: envelope_report(&env),
        passes_56: constructibility.passes_56(),
        passes_57: constructibility.passes_57(),
        constructibility: constructibility.entries,
        epsilon_star: sweep,
        extremality: ExtremalityRecord::new(&inst.cartan, extremality),
        discard,
    })
}

fn star_sweep(inst: &Instance, env: &Envelope, t: usize, depth: usize, convention: Convention) -> Result<StarSweep, CliError> {
    let (cartan, word) = (&inst.cartan, &inst.word);
    let generated = generate_binf(cartan, word, convention, depth);
    let (mut s_dependent, mut decreasing) = (0, 0);
    for b in &generated.elements {
        let all = max_over_trails(env, b);
        let mut agree = true;
        for s in 0..cartan.rank() {
            agree &= epsilon_star(env, s, b).map_err(internal)? == all;
        }
        s_dependent += usize::from(!agree);
        let lowered = crystal_f(cartan, word, convention, b, t);
        decreasing += usize::from(!lowered.escaped && max_over_trails(env, &lowered.element) < all);
    }
    if max_over_trails(env, &BJElement::zero(word.len())) != 0 {
        return Err(internal("ε* does not vanish at b_∞"));
    }
    Ok(StarSweep {
        convention,
        depth,
        elements: generated.elements.len(),
        escapes: generated.escapes,
        s_dependent,
        decreasing_along_t: decreasing,
    })
}
