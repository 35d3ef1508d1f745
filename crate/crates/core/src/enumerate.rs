//! Maximal omnitigs as handles: intervals of maximal macrotigs plus leftover
//! bivalent arcs, all expressed in the coordinates of the input graph.
//!
//! Handle lengths come from per-node univocal chain lengths, so statistics
//! need no materialization. Materializing a handle performs the univocal
//! extension in the input graph.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::ops::Range;

use crate::classify::{is_closed_path, Classification};
use crate::error::{Error, Result};
use crate::graph::{ArcId, Graph, NodeId};
use crate::oracle::{build_oracle, Backend, FailureOracle, TreeOrder};
use crate::scc::{is_strongly_connected, strongly_connected_components};
use crate::tigs::{
    all_maximal_macrotigs, compute_macronodes, omnitig_right_extensions, Macrotig, MacrotigSet,
};
use crate::transform::{compress_pipeline, PipelineOptions, TransformedGraph};
use crate::univocal::{univocal_extension, ExtensionLengths};
use crate::verify::{brute_force_maximal_omnitigs, extends_omnitig, sample_closed_arc_covering_walk};
use crate::walk::{is_circular_subwalk, Walk};

/// Whether `f W g` is an omnitig, given the omnitig `f W` (as `walk`) with
/// join arc `f` and `t(g) = h(W)`.
pub fn is_omnitig_right_extension(oracle: &FailureOracle<'_>, walk: &[ArcId], g: ArcId) -> bool {
    omnitig_right_extensions(oracle, walk, |x| walk.contains(&x)).contains(&g)
}

/// Result of scanning one macrotig.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Scan {
    /// `(f_index, g_index)` pairs, left to right.
    pub pairs: Vec<(usize, usize)>,
    /// Times the scan found no join arc left of the next split arc, or no
    /// omnitig at the start of the macrotig.
    pub anomalies: usize,
    pub steps: u64,
}

/// Two-pointer scan of a maximal macrotig: the left pointer walks its join
/// arcs, the right pointer its split arcs.
pub fn scan_macrotig(oracle: &FailureOracle<'_>, macrotig: &Macrotig) -> Scan {
    let arcs = &macrotig.arcs;
    let joins = &macrotig.join_positions;
    let splits = &macrotig.split_positions;
    let mut scan = Scan::default();
    if joins.is_empty() {
        scan.anomalies += 1;
        return scan;
    }
    let mut positions: HashMap<ArcId, Vec<usize>> = HashMap::new();
    for (p, &a) in arcs.iter().enumerate() {
        positions.entry(a).or_default().push(p);
    }
    let ext = |f: usize, g: usize| {
        let occurs = |x: ArcId| positions.get(&x).is_some_and(|ps| ps.iter().any(|p| (f..g).contains(p)));
        omnitig_right_extensions(oracle, &arcs[f..g], occurs).contains(&arcs[g])
    };

    let mut ji = 0;
    let mut f = joins[0];
    let mut si = splits.partition_point(|&s| s <= f);
    let mut first = true;
    while si < splits.len() {
        let mut g = None;
        while si < splits.len() && ext(f, splits[si]) {
            g = Some(splits[si]);
            si += 1;
            scan.steps += 1;
        }
        match g {
            Some(g) => scan.pairs.push((f, g)),
            None if first => scan.anomalies += 1,
            None => {}
        }
        first = false;
        while si < splits.len() && !ext(f, splits[si]) {
            scan.steps += 1;
            if ji + 1 < joins.len() && joins[ji + 1] < splits[si] {
                ji += 1;
                f = joins[ji];
                continue;
            }
            // no join arc left before the next split: restart past it
            scan.anomalies += 1;
            ji = joins.partition_point(|&j| j < splits[si]);
            if ji == joins.len() {
                return scan;
            }
            f = joins[ji];
            si = splits.partition_point(|&s| s <= f);
            first = true;
        }
    }
    scan
}

/// Bivalent arcs of the compressed graph that occur in no macrotig.
pub fn leftover_bivalent_arcs(graph: &Graph, class: &Classification, macrotigs: &[Macrotig]) -> Vec<ArcId> {
    let mut in_macrotig = vec![false; graph.arc_count()];
    for m in macrotigs {
        for &a in &m.arcs {
            in_macrotig[a] = true;
        }
    }
    class.bivalent_arcs().filter(|&b| !in_macrotig[b]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HandleKind {
    /// `U(X[f..g])` for macrotig `X`, indices in compressed coordinates.
    Interval {
        macrotig: usize,
        f_index: usize,
        g_index: usize,
    },
    /// `U(b)` for a bivalent arc of the compressed graph in no macrotig.
    LeftoverArc(ArcId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmnitigHandle {
    pub kind: HandleKind,
    /// Length of the materialized omnitig.
    pub len: usize,
    /// Core walk in input-graph arcs: a range of the expanded macrotig, or of
    /// the leftover arc's expansion.
    core: Range<usize>,
}

impl OmnitigHandle {
    pub fn core_len(&self) -> usize {
        self.core.len()
    }

    /// Position of the core walk within [`Representation::expanded`] (intervals)
    /// or within the leftover arc's expansion.
    pub fn core_range(&self) -> Range<usize> {
        self.core.clone()
    }
}

/// Options for [`all_maximal_omnitig_handles`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub backend: Backend,
    /// Apply fan expansion to bound degrees by two.
    pub constant_degree: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            backend: Backend::default(),
            constant_degree: true,
        }
    }
}

/// Instrumented work per phase, in elementary steps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PhaseSteps {
    pub transform: u64,
    pub oracle_preprocessing: u64,
    pub oracle_queries: u64,
    pub oracle_traversals: u64,
    /// Macronodes plus total microtig and macrotig length.
    pub tigs: u64,
    pub scan: u64,
    /// Expansion of macrotigs into input-graph arcs.
    pub expansion: u64,
    pub handles: u64,
}

impl PhaseSteps {
    pub fn total(&self) -> u64 {
        self.transform
            + self.oracle_preprocessing
            + self.oracle_queries
            + self.oracle_traversals
            + self.tigs
            + self.scan
            + self.expansion
            + self.handles
    }
}

/// Output of [`all_maximal_omnitig_handles`].
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Enumeration {
    /// The graph is a single cycle; every walk is an omnitig. Holds the cycle from node 0.
    ClosedPath(Walk),
    Omnitigs(Representation),
}

/// Linear-size representation of all maximal omnitigs of a graph.
#[derive(Debug, Clone)]
pub struct Representation {
    pub transformed: TransformedGraph,
    pub tigs: MacrotigSet,
    /// Every macrotig expanded into input-graph arcs.
    pub expanded: Vec<Vec<ArcId>>,
    pub leftover: Vec<ArcId>,
    /// Distinct maximal omnitigs, macrotig intervals first, then leftover arcs.
    pub handles: Vec<OmnitigHandle>,
    /// Handles dropped because an earlier one materializes to the same walk.
    pub duplicates: usize,
    /// Candidates dropped because their walk extends in the input graph. Only
    /// fan expansion produces them: a maximal omnitig of the expanded graph can
    /// contract to a proper subwalk of a maximal omnitig of the input, or to
    /// no input arc at all.
    pub non_maximal: usize,
    /// Structural surprises in the macrotig merge and the scan; zero in practice.
    pub anomalies: usize,
    pub steps: PhaseSteps,
    extension: ExtensionLengths,
}

impl Representation {
    /// Core walk of a handle in input-graph arcs, before univocal extension.
    pub fn core<'a>(&'a self, handle: &OmnitigHandle) -> &'a [ArcId] {
        match handle.kind {
            HandleKind::Interval { macrotig, .. } => &self.expanded[macrotig][handle.core.clone()],
            HandleKind::LeftoverArc(b) => &self.transformed.expansion(b)[handle.core.clone()],
        }
    }

    /// The maximal omnitig of `graph` (the input graph) that `handle` stands for.
    pub fn materialize(&self, graph: &Graph, handle: &OmnitigHandle) -> Walk {
        Walk::open(self.extension.extend(graph, self.core(handle)))
    }

    pub fn materialize_all(&self, graph: &Graph) -> Vec<Walk> {
        self.handles.iter().map(|h| self.materialize(graph, h)).collect()
    }

    /// The omnitig of the compressed graph a handle came from, univocally extended there.
    pub fn compressed_walk(&self, handle: &OmnitigHandle) -> Result<Walk> {
        let arcs = match handle.kind {
            HandleKind::Interval {
                macrotig,
                f_index,
                g_index,
            } => self.tigs.macrotigs[macrotig].arcs[f_index..=g_index].to_vec(),
            HandleKind::LeftoverArc(b) => vec![b],
        };
        univocal_extension(&self.transformed.graph, &Walk::open(arcs))
    }

    pub fn length_stats(&self) -> LengthStats {
        LengthStats::from_lengths(self.handles.iter().map(|h| h.len))
    }
}

/// Computes the handles of all maximal omnitigs of a strongly connected graph.
pub fn all_maximal_omnitig_handles(graph: &Graph, options: EnumerationOptions) -> Result<Enumeration> {
    if graph.arc_count() == 0 {
        return Err(Error::Input("graph has no arcs".into()));
    }
    if !is_strongly_connected(graph) {
        return Err(Error::NotStronglyConnected);
    }
    if is_closed_path(graph) {
        return Ok(Enumeration::ClosedPath(cycle_from_zero(graph)));
    }

    let transformed = compress_pipeline(
        graph,
        PipelineOptions {
            constant_degree: options.constant_degree,
        },
    )?;
    let mut steps = PhaseSteps {
        transform: transformed.steps,
        ..PhaseSteps::default()
    };
    let compressed = &transformed.graph;
    let class = Classification::new(compressed);
    let macronodes = compute_macronodes(compressed, &class)?;
    let reversed = compressed.reversed();
    let forward = build_oracle(compressed, options.backend)?;
    let reverse = build_oracle(&reversed, options.backend)?;
    let tigs = all_maximal_macrotigs(&forward, &reverse, &class, &macronodes);
    steps.tigs = (compressed.node_count()
        + tigs.microtigs.iter().map(|m| m.arcs.len()).sum::<usize>()
        + tigs.macrotigs.iter().map(|m| m.arcs.len()).sum::<usize>()) as u64;

    let scans: Vec<Scan> = tigs.macrotigs.iter().map(|m| scan_macrotig(&forward, m)).collect();
    let leftover = leftover_bivalent_arcs(compressed, &class, &tigs.macrotigs);
    steps.scan = scans.iter().map(|s| s.steps).sum::<u64>()
        + tigs.macrotigs.iter().map(|m| m.arcs.len() as u64).sum::<u64>();
    steps.oracle_preprocessing = forward.preprocessing_steps() + reverse.preprocessing_steps();
    steps.oracle_queries = forward.query_count() + reverse.query_count();
    steps.oracle_traversals = forward.traversal_steps() + reverse.traversal_steps();
    let anomalies = tigs.anomalies + scans.iter().map(|s| s.anomalies).sum::<usize>();

    let extension = ExtensionLengths::new(graph)?;
    let input_class = Classification::new(graph);
    let input_reversed;
    let filter = if transformed.fan_arc_count() > 0 {
        input_reversed = graph.reversed();
        Some(MaximalityFilter::new(graph, &input_reversed, options.backend)?)
    } else {
        None
    };
    let mut seen = HashSet::new();
    let mut handles = Vec::new();
    let mut duplicates = 0;
    let mut non_maximal = 0;
    let mut expanded = Vec::with_capacity(tigs.macrotigs.len());
    for (id, (m, scan)) in tigs.macrotigs.iter().zip(&scans).enumerate() {
        let (arcs, ranges) = transformed.expand_with_positions(&m.arcs);
        steps.expansion += (arcs.len() + ranges.len()) as u64;
        let keys = KeyIndex::new(&input_class, &arcs);
        let mut positions: HashMap<ArcId, Vec<usize>> = HashMap::new();
        if filter.is_some() {
            for (p, &a) in arcs.iter().enumerate() {
                positions.entry(a).or_default().push(p);
            }
        }
        for &(f_index, g_index) in &scan.pairs {
            steps.handles += 1;
            let start = ranges[f_index..=g_index].iter().find(|r| !r.is_empty());
            let end = ranges[f_index..=g_index].iter().rev().find(|r| !r.is_empty());
            // only fan arcs: the walk contracts to a single node of the input
            let (Some(start), Some(end)) = (start, end) else {
                non_maximal += 1;
                continue;
            };
            let core = start.start..end.end;
            if !seen.insert(keys.key(&arcs, core.clone())) {
                duplicates += 1;
                continue;
            }
            if let Some(filter) = &filter {
                let in_core = |x: ArcId| positions.get(&x).is_some_and(|ps| ps.iter().any(|p| core.contains(p)));
                if !filter.is_maximal(&arcs[core.clone()], keys.anchors(core.clone()), in_core, &extension) {
                    non_maximal += 1;
                    continue;
                }
            }
            let len = extension.extended_len(
                graph.tail(arcs[core.start]),
                graph.head(arcs[core.end - 1]),
                core.len(),
            );
            handles.push(OmnitigHandle {
                kind: HandleKind::Interval {
                    macrotig: id,
                    f_index,
                    g_index,
                },
                len,
                core,
            });
        }
        expanded.push(arcs);
    }
    for &b in &leftover {
        steps.handles += 1;
        let arcs = transformed.expansion(b);
        let keys = KeyIndex::new(&input_class, arcs);
        if !seen.insert(keys.key(arcs, 0..arcs.len())) {
            duplicates += 1;
            continue;
        }
        if let Some(filter) = &filter {
            if !filter.is_maximal(arcs, keys.anchors(0..arcs.len()), |x| arcs.contains(&x), &extension) {
                non_maximal += 1;
                continue;
            }
        }
        let len = extension.extended_len(graph.tail(arcs[0]), graph.head(arcs[arcs.len() - 1]), arcs.len());
        handles.push(OmnitigHandle {
            kind: HandleKind::LeftoverArc(b),
            len,
            core: 0..arcs.len(),
        });
    }
    if let Some(filter) = &filter {
        steps.oracle_preprocessing += filter.forward.preprocessing_steps() + filter.reverse.preprocessing_steps();
        steps.oracle_queries += filter.forward.query_count() + filter.reverse.query_count();
        steps.oracle_traversals += filter.forward.traversal_steps() + filter.reverse.traversal_steps();
    }
    if anomalies > 0 {
        log::warn!("{anomalies} structural anomalies while computing omnitig handles");
    }
    log::debug!(
        "{} macrotigs, {} leftover arcs, {} handles, {} duplicates",
        tigs.macrotigs.len(),
        leftover.len(),
        handles.len(),
        duplicates
    );

    Ok(Enumeration::Omnitigs(Representation {
        transformed,
        tigs,
        expanded,
        leftover,
        handles,
        duplicates,
        non_maximal,
        anomalies,
        steps,
        extension,
    }))
}

/// Identifies the materialized omnitig of a core walk in `O(1)`: its first join
/// arc, its last split arc and their distance. Univocal extension adds no join
/// arc on the left and no split arc on the right, so both lie in the core.
struct KeyIndex {
    next_join: Vec<usize>,
    prev_split: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Anchored(ArcId, ArcId, isize),
    Plain(ArcId, ArcId, usize),
}

impl KeyIndex {
    fn new(class: &Classification, arcs: &[ArcId]) -> Self {
        let n = arcs.len();
        let mut next_join = vec![usize::MAX; n + 1];
        for i in (0..n).rev() {
            next_join[i] = if class.is_join_arc(arcs[i]) { i } else { next_join[i + 1] };
        }
        let mut prev_split = vec![usize::MAX; n];
        let mut last = usize::MAX;
        for i in 0..n {
            if class.is_split_arc(arcs[i]) {
                last = i;
            }
            prev_split[i] = last;
        }
        Self { next_join, prev_split }
    }

    /// Positions of the first join arc and the last split arc inside `core`.
    fn anchors(&self, core: Range<usize>) -> Option<(usize, usize)> {
        let j = self.next_join[core.start];
        let s = self.prev_split[core.end - 1];
        (j < core.end && s != usize::MAX && s >= core.start).then(|| (j - core.start, s - core.start))
    }

    fn key(&self, arcs: &[ArcId], core: Range<usize>) -> Key {
        let j = self.next_join[core.start];
        let s = self.prev_split[core.end - 1];
        if j < core.end && s != usize::MAX && s >= core.start {
            Key::Anchored(arcs[j], arcs[s], s as isize - j as isize)
        } else {
            Key::Plain(arcs[core.start], arcs[core.end - 1], core.len())
        }
    }
}

/// Tells whether `U(core)` is a maximal omnitig of the input graph.
///
/// `W = U(core)` is right-maximal iff no out-arc `e` of `h(W)` makes `W e` an
/// omnitig; with `f` the first join arc of `W` this is decided by which heads
/// reach `h(f)` in `G ∖ f`, as in the macrotig scan. Left-maximality is the
/// same question on the reverse graph with the last split arc.
struct MaximalityFilter<'g> {
    graph: &'g Graph,
    reversed: &'g Graph,
    forward: FailureOracle<'g>,
    reverse: FailureOracle<'g>,
    /// Forest of in-degree-one nodes, parent the tail of the unique in-arc.
    back_chain: TreeOrder,
    /// Forest of out-degree-one nodes, parent the head of the unique out-arc.
    fwd_chain: TreeOrder,
}

impl<'g> MaximalityFilter<'g> {
    fn new(graph: &'g Graph, reversed: &'g Graph, backend: Backend) -> Result<Self> {
        let back: Vec<NodeId> = graph
            .nodes()
            .map(|v| {
                if graph.in_degree(v) == 1 {
                    graph.tail(graph.in_arcs(v)[0])
                } else {
                    usize::MAX
                }
            })
            .collect();
        let fwd: Vec<NodeId> = graph
            .nodes()
            .map(|v| {
                if graph.out_degree(v) == 1 {
                    graph.head(graph.out_arcs(v)[0])
                } else {
                    usize::MAX
                }
            })
            .collect();
        Ok(Self {
            graph,
            reversed,
            forward: build_oracle(graph, backend)?,
            reverse: build_oracle(reversed, backend)?,
            back_chain: TreeOrder::new(&back),
            fwd_chain: TreeOrder::new(&fwd),
        })
    }

    fn is_maximal(
        &self,
        core: &[ArcId],
        anchors: Option<(usize, usize)>,
        in_core: impl Fn(ArcId) -> bool,
        extension: &ExtensionLengths,
    ) -> bool {
        // a maximal omnitig has a join arc and a split arc, both inside the core
        let Some((j, s)) = anchors else {
            return false;
        };
        let g = self.graph;
        let (first, last) = (core[0], core[core.len() - 1]);
        // arcs leaving h(W) can only lie in the core or in the backward chain of W
        let in_walk_right = |x: ArcId| {
            in_core(x) || (g.in_degree(g.head(x)) == 1 && self.back_chain.is_ancestor(g.head(x), g.tail(first)))
        };
        let in_walk_left = |x: ArcId| {
            in_core(x) || (g.out_degree(g.tail(x)) == 1 && self.fwd_chain.is_ancestor(g.tail(x), g.head(last)))
        };
        let end = walk_end(g, g.head(last), extension.forward[g.head(last)]);
        let start = walk_end(self.reversed, g.tail(first), extension.backward[g.tail(first)]);
        let right = side_is_maximal(&self.forward, end, core[j], in_walk_right);
        let left = side_is_maximal(&self.reverse, start, core[s], in_walk_left);
        if right == Some(false) || left == Some(false) {
            return false;
        }
        if right.is_some() && left.is_some() {
            return true;
        }
        let walk = extension.extend(g, core);
        let right = right.unwrap_or_else(|| {
            self.forward.record_search((walk.len() * g.arc_count()) as u64);
            !g.out_arcs(end)
                .iter()
                .any(|&x| extends_omnitig(g, &[walk.as_slice(), &[x]].concat()))
        });
        let left = left.unwrap_or_else(|| {
            self.reverse.record_search((walk.len() * g.arc_count()) as u64);
            let rev: Vec<ArcId> = walk.iter().rev().copied().collect();
            !g.in_arcs(start)
                .iter()
                .any(|&x| extends_omnitig(self.reversed, &[rev.as_slice(), &[x]].concat()))
        });
        right && left
    }
}

/// Node reached after `steps` unique out-arcs from `v`.
fn walk_end(graph: &Graph, mut v: NodeId, steps: usize) -> NodeId {
    for _ in 0..steps {
        v = graph.head(graph.out_arcs(v)[0]);
    }
    v
}

/// `Some(true)` if no out-arc of `node` extends the omnitig with join arc `f`,
/// `Some(false)` if one does, `None` when only an exact search can tell.
fn side_is_maximal(oracle: &FailureOracle<'_>, node: NodeId, f: ArcId, in_walk: impl Fn(ArcId) -> bool) -> Option<bool> {
    let graph = oracle.graph();
    let mut outside = 0;
    let mut inside = false;
    for &x in graph.out_arcs(node) {
        if oracle.query(graph.head(x), f) {
            if in_walk(x) {
                inside = true;
            } else {
                outside += 1;
                if outside == 2 {
                    return Some(true);
                }
            }
        }
    }
    (outside == 1 && !inside).then_some(false)
}

fn cycle_from_zero(graph: &Graph) -> Walk {
    let mut arcs = Vec::with_capacity(graph.arc_count());
    let mut v = 0;
    for _ in 0..graph.arc_count() {
        let a = graph.out_arcs(v)[0];
        arcs.push(a);
        v = graph.head(a);
    }
    Walk::closed(arcs)
}

/// Count, extremes, mean and total of omnitig lengths.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LengthStats {
    pub count: usize,
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    pub total: usize,
}

impl LengthStats {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut s = LengthStats {
            min: usize::MAX,
            ..Self::default()
        };
        for len in lengths {
            s.count += 1;
            s.total += len;
            s.min = s.min.min(len);
            s.max = s.max.max(len);
        }
        if s.count == 0 {
            s.min = 0;
        } else {
            s.mean = s.total as f64 / s.count as f64;
        }
        s
    }
}

/// Length statistics of all maximal omnitigs, from handles only. A closed path
/// counts as one omnitig of length `m`.
pub fn omnitig_length_stats(graph: &Graph, options: EnumerationOptions) -> Result<LengthStats> {
    Ok(match all_maximal_omnitig_handles(graph, options)? {
        Enumeration::ClosedPath(w) => LengthStats::from_lengths([w.len()]),
        Enumeration::Omnitigs(rep) => rep.length_stats(),
    })
}

/// Difference between the pipeline output and the brute-force oracle.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleMismatch {
    /// Brute-force maximal omnitigs the pipeline did not report.
    pub missing: Vec<Vec<ArcId>>,
    /// Reported walks that are not brute-force maximal omnitigs.
    pub unexpected: Vec<Vec<ArcId>>,
    /// Walks the pipeline reported more than once.
    pub repeated: Vec<Vec<ArcId>>,
}

/// Runs the pipeline on a small graph and compares its materialized output
/// with [`brute_force_maximal_omnitigs`]. A closed path is compared as its
/// single cycle against nothing, since the oracle does not apply to it.
pub fn compare_with_brute_force(graph: &Graph, options: EnumerationOptions) -> Result<Option<OracleMismatch>> {
    let expected = brute_force_maximal_omnitigs(graph)?;
    let walks = match all_maximal_omnitig_handles(graph, options)? {
        Enumeration::ClosedPath(_) => return Err(Error::ClosedPath),
        Enumeration::Omnitigs(rep) => rep.materialize_all(graph),
    };
    let mut got = BTreeSet::new();
    let mut mismatch = OracleMismatch::default();
    for w in walks {
        let arcs = w.into_arcs();
        if !got.insert(arcs.clone()) {
            mismatch.repeated.push(arcs);
        }
    }
    mismatch.missing = expected.difference(&got).cloned().collect();
    mismatch.unexpected = got.difference(&expected).cloned().collect();
    Ok((mismatch != OracleMismatch::default()).then_some(mismatch))
}

/// An omnitig that is not a circular subwalk of a sampled covering walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyViolation {
    pub omnitig: Vec<ArcId>,
    pub sample_seed: u64,
    pub sample: Vec<ArcId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SafetyReport {
    pub samples: usize,
    pub checks: usize,
    pub violations: Vec<SafetyViolation>,
}

/// Checks every walk in `omnitigs` against `samples` random closed arc-covering
/// walks, seeded `seed`, `seed + 1`, ...
pub fn verify_safety_by_sampling(
    graph: &Graph,
    omnitigs: &[Walk],
    samples: usize,
    seed: u64,
) -> Result<SafetyReport> {
    let mut report = SafetyReport::default();
    for s in 0..samples as u64 {
        let sample_seed = seed.wrapping_add(s);
        let sample = sample_closed_arc_covering_walk(graph, sample_seed)?;
        report.samples += 1;
        for w in omnitigs {
            report.checks += 1;
            if !is_circular_subwalk(w.arcs(), sample.arcs()) {
                report.violations.push(SafetyViolation {
                    omnitig: w.arcs().to_vec(),
                    sample_seed,
                    sample: sample.arcs().to_vec(),
                });
            }
        }
    }
    Ok(report)
}

/// A strongly connected component with at least one arc, as its own graph.
#[derive(Debug, Clone)]
pub struct Component {
    /// Input node of every component node.
    pub nodes: Vec<NodeId>,
    /// Input arc of every component arc.
    pub arcs: Vec<ArcId>,
    pub graph: Graph,
}

/// Non-trivial strongly connected components, in order of their smallest node.
pub fn nontrivial_components(graph: &Graph) -> Vec<Component> {
    let comps = strongly_connected_components(graph);
    let mut members = comps.members();
    members.sort_by_key(|m| m.iter().min().copied());
    members
        .into_iter()
        .filter_map(|mut nodes| {
            nodes.sort_unstable();
            let (sub, arcs) = graph.induced_subgraph(&nodes);
            (sub.arc_count() > 0).then_some(Component {
                nodes,
                arcs,
                graph: sub,
            })
        })
        .collect()
}
