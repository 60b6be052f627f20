//! Diameter by refinement of fair-split-tree node pairs.
//!
//! The engine keeps a current estimate `delta` (always the length of a
//! concrete pair of input points) and a frontier of node pairs `(u, v)`
//! that may still contain a longer pair. Every pair carries an upper bound
//! `m` on the distance between any point of `u` and any point of `v`. A
//! pair is discarded as soon as `m <= (1 + eps) * delta`; otherwise it is
//! replaced by pairs of children. With `eps == 0` the result is exact.
//!
//! Three frontier disciplines are provided (see [`Strategy`]) plus a
//! projection shortcut for pairs whose point-to-point segments are all
//! nearly parallel ([`fs_directions_diameter`]).

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{DiameterError, Result, check_eps_nonneg, check_eps_positive};
use crate::geometry::{PointSet, distance};
use crate::tree::{FairSplitTree, NodeId};

/// Frontier discipline and expansion rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// Max-heap on the pair bound; a surviving pair is replaced by the
    /// pairs of children of both sides (three pairs for a self pair).
    Heap4Way,
    /// Max-heap on the pair bound; only the side with the longer box edge
    /// is split, giving two pairs.
    HeapWspd,
    /// First-in first-out queue with the two-pair expansion of
    /// [`Strategy::HeapWspd`].
    FifoLevels,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Heap4Way, Strategy::HeapWspd, Strategy::FifoLevels];

    fn uses_heap(self) -> bool {
        !matches!(self, Strategy::FifoLevels)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub pairs_created: u64,
    pub distance_evaluations: u64,
    pub nodes_built: u64,
    /// Pushes plus pops on the frontier.
    pub heap_ops: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiameterResult {
    /// Original indices `(i, j)` with `i <= j`.
    pub best_pair: (usize, usize),
    /// `distance(points[i], points[j])`, bit for bit.
    pub best_distance: f64,
    pub stats: RunStats,
}

impl DiameterResult {
    pub(crate) fn from_pair(points: &PointSet, i: usize, j: usize, stats: RunStats) -> Self {
        Self { best_pair: (i.min(j), i.max(j)), best_distance: points.dist(i, j), stats }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event")]
pub enum TraceEvent {
    /// A pair was created; `queued` is false when it was discarded
    /// immediately (pruned or resolved by projection).
    PairCreated {
        u: NodeId,
        v: NodeId,
        m: f64,
        queued: bool,
    },
    /// A created pair was resolved by projecting onto its center axis.
    PairProjected {
        u: NodeId,
        v: NodeId,
    },
    /// A pair was taken off the frontier.
    PairHandled {
        u: NodeId,
        v: NodeId,
        m: f64,
    },
    PairPruned {
        u: NodeId,
        v: NodeId,
    },
    PairExpanded {
        u: NodeId,
        v: NodeId,
    },
    EstimateUpdated {
        delta: f64,
        pair: (usize, usize),
    },
    NodeSplit {
        node: NodeId,
    },
}

/// Ordered log of one run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub events: Vec<TraceEvent>,
}

impl RunTrace {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Bounds of handled pairs in handling order.
    pub fn handled_bounds(&self) -> Vec<f64> {
        self.events
            .iter()
            .filter_map(|e| match e {
                TraceEvent::PairHandled { m, .. } => Some(*m),
                _ => None,
            })
            .collect()
    }

    /// Successive values of the estimate.
    pub fn estimates(&self) -> Vec<f64> {
        self.events
            .iter()
            .filter_map(|e| match e {
                TraceEvent::EstimateUpdated { delta, .. } => Some(*delta),
                _ => None,
            })
            .collect()
    }

    /// Every created pair as an unordered `(min, max)` node pair.
    pub fn created_pairs(&self) -> Vec<(NodeId, NodeId)> {
        self.events
            .iter()
            .filter_map(|e| match *e {
                TraceEvent::PairCreated { u, v, .. } => Some((u.min(v), u.max(v))),
                _ => None,
            })
            .collect()
    }

    /// Pairs discarded without expansion, either at creation or when handled.
    pub fn discarded_pairs(&self) -> Vec<(NodeId, NodeId)> {
        self.events
            .iter()
            .filter_map(|e| match *e {
                TraceEvent::PairCreated { u, v, queued: false, .. } | TraceEvent::PairPruned { u, v } => Some((u, v)),
                _ => None,
            })
            .collect()
    }

    /// Frontier contents after each event prefix `events[..=k]`, as
    /// callbacks; used to render snapshots.
    pub fn replay_frontier(&self, mut visit: impl FnMut(usize, &[(NodeId, NodeId)])) {
        let mut live: Vec<(NodeId, NodeId)> = Vec::new();
        for (k, e) in self.events.iter().enumerate() {
            match *e {
                TraceEvent::PairCreated { u, v, queued: true, .. } => live.push((u, v)),
                TraceEvent::PairHandled { u, v, .. } => {
                    if let Some(pos) = live.iter().position(|&p| p == (u, v)) {
                        live.swap_remove(pos);
                    }
                }
                _ => {}
            }
            visit(k, &live);
        }
    }
}

/// A traced run together with the partially built tree it used.
#[derive(Clone, Debug)]
pub struct TracedRun {
    pub result: DiameterResult,
    pub trace: RunTrace,
    pub tree: FairSplitTree,
}

/// `|c(u) c(v)| + r(u) + r(v)`: no point of `u` is farther than this from
/// any point of `v`.
pub fn pair_upper_bound(tree: &FairSplitTree, u: NodeId, v: NodeId) -> f64 {
    let (a, b) = (tree.node(u), tree.node(v));
    distance(&a.center, &b.center) + a.radius + b.radius
}

/// Whether a pair with bound `m` can be discarded given estimate `delta`.
pub fn should_prune(m: f64, delta: f64, eps: f64) -> Result<bool> {
    check_eps_nonneg(eps)?;
    if delta < 0.0 {
        return Err(DiameterError::InvalidParameter(format!("negative estimate {delta}")));
    }
    Ok(prune(m, delta, eps))
}

#[inline]
fn prune(m: f64, delta: f64, eps: f64) -> bool {
    m <= (1.0 + eps) * delta
}

/// Diameter within a factor `1 - eps` (exact for `eps == 0`).
pub fn approx_diameter(points: &PointSet, eps: f64, strategy: Strategy) -> Result<DiameterResult> {
    check_eps_nonneg(eps)?;
    Ok(run(points, eps, strategy, None, false)?.result)
}

/// [`approx_diameter`] recording every event of the run.
pub fn approx_diameter_traced(points: &PointSet, eps: f64, strategy: Strategy) -> Result<TracedRun> {
    check_eps_nonneg(eps)?;
    run(points, eps, strategy, None, true)
}

/// Heap refinement where a pair whose segments all lie within angle
/// `sqrt(eps)` of its center axis is resolved by projecting its points onto
/// that axis and taking the two extremes.
pub fn fs_directions_diameter(points: &PointSet, eps: f64) -> Result<DiameterResult> {
    check_eps_positive(eps)?;
    Ok(run(points, eps, Strategy::Heap4Way, Some(eps.sqrt()), false)?.result)
}

pub fn fs_directions_traced(points: &PointSet, eps: f64) -> Result<TracedRun> {
    check_eps_positive(eps)?;
    run(points, eps, Strategy::Heap4Way, Some(eps.sqrt()), true)
}

/// Conservative bound on the angle between segment `c(u) c(v)` and any
/// segment `pq`, `p` in `u`, `q` in `v`.
pub fn pair_angle_bound(tree: &FairSplitTree, u: NodeId, v: NodeId) -> f64 {
    let (a, b) = (tree.node(u), tree.node(v));
    let axis = distance(&a.center, &b.center);
    if axis == 0.0 {
        return std::f64::consts::PI;
    }
    ((a.radius + b.radius) / axis).min(1.0).asin()
}

fn run(
    points: &PointSet,
    eps: f64,
    strategy: Strategy,
    angle_threshold: Option<f64>,
    traced: bool,
) -> Result<TracedRun> {
    let start = Instant::now();
    let tree = FairSplitTree::build_root(points)?;
    let mut engine = Engine::new(tree, points, eps, strategy, angle_threshold, traced);
    if points.len() > 1 {
        engine.run();
    } else {
        engine.best = Some((0, 0));
        engine.delta = 0.0;
    }
    let Engine { tree, best, mut stats, trace, .. } = engine;
    stats.nodes_built = tree.node_count() as u64;
    stats.wall_time = start.elapsed();
    let (i, j) = best.expect("the root pair always produces an estimate");
    Ok(TracedRun {
        result: DiameterResult::from_pair(points, i, j, stats),
        trace: RunTrace { events: trace.unwrap_or_default() },
        tree,
    })
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    m: f64,
    seq: u64,
    u: NodeId,
    v: NodeId,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // Larger bound first; among equal bounds, earlier creation first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.total_cmp(&other.m).then_with(|| other.seq.cmp(&self.seq))
    }
}

enum Frontier {
    Heap(BinaryHeap<Entry>),
    Fifo(VecDeque<Entry>),
}

impl Frontier {
    fn push(&mut self, e: Entry) {
        match self {
            Frontier::Heap(h) => h.push(e),
            Frontier::Fifo(q) => q.push_back(e),
        }
    }

    fn pop(&mut self) -> Option<Entry> {
        match self {
            Frontier::Heap(h) => h.pop(),
            Frontier::Fifo(q) => q.pop_front(),
        }
    }
}

struct Engine {
    tree: FairSplitTree,
    eps: f64,
    strategy: Strategy,
    angle_threshold: Option<f64>,
    /// Absolute allowance for rounding in computed bounds.
    slack: f64,
    delta: f64,
    best: Option<(usize, usize)>,
    stats: RunStats,
    trace: Option<Vec<TraceEvent>>,
    frontier: Frontier,
    seq: u64,
}

impl Engine {
    fn new(
        tree: FairSplitTree,
        points: &PointSet,
        eps: f64,
        strategy: Strategy,
        angle_threshold: Option<f64>,
        traced: bool,
    ) -> Self {
        let d = points.dim() as f64;
        let slack = d.sqrt() * (6.0 * d + 20.0) * f64::EPSILON * points.max_abs_coord();
        let frontier =
            if strategy.uses_heap() { Frontier::Heap(BinaryHeap::new()) } else { Frontier::Fifo(VecDeque::new()) };
        Self {
            tree,
            eps,
            strategy,
            angle_threshold,
            slack,
            delta: f64::NEG_INFINITY,
            best: None,
            stats: RunStats::default(),
            trace: traced.then(Vec::new),
            frontier,
            seq: 0,
        }
    }

    #[inline]
    fn log(&mut self, event: impl FnOnce() -> TraceEvent) {
        if let Some(t) = self.trace.as_mut() {
            t.push(event());
        }
    }

    fn run(&mut self) {
        let root = self.tree.root();
        self.offer(root, root, f64::INFINITY);
        while let Some(Entry { m, u, v, .. }) = self.frontier.pop() {
            self.stats.heap_ops += 1;
            self.log(|| TraceEvent::PairHandled { u, v, m });
            if prune(m, self.delta, self.eps) {
                self.log(|| TraceEvent::PairPruned { u, v });
                continue;
            }
            self.log(|| TraceEvent::PairExpanded { u, v });
            self.expand(u, v, m);
        }
    }

    /// Creates pair `(u, v)`: evaluates its representative pair, then
    /// queues it unless it can be discarded right away.
    fn offer(&mut self, u: NodeId, v: NodeId, parent_m: f64) {
        self.stats.pairs_created += 1;
        self.update_estimate(u, v);
        let m = self.bound(u, v, parent_m);
        let mut queued = !prune(m, self.delta, self.eps);
        if queued
            && let Some(threshold) = self.angle_threshold
            && u != v
            && pair_angle_bound(&self.tree, u, v) <= threshold
        {
            self.project(u, v);
            queued = false;
        }
        self.log(|| TraceEvent::PairCreated { u, v, m, queued });
        if queued {
            self.stats.heap_ops += 1;
            self.seq += 1;
            self.frontier.push(Entry { m, seq: self.seq, u, v });
        }
    }

    /// Cached bound of a new pair. The geometric bound of a child pair can
    /// exceed its parent's (a child ball need not lie inside the parent
    /// ball), so it is capped by the parent bound, which also covers every
    /// point pair of the child.
    fn bound(&self, u: NodeId, v: NodeId, parent_m: f64) -> f64 {
        let (a, b) = (self.tree.node(u), self.tree.node(v));
        if a.is_degenerate() && b.is_degenerate() {
            // every point pair has exactly this distance
            return distance(&a.center, &b.center);
        }
        if u == v && a.len() == 2 {
            // the representative is the only pair
            return distance(self.tree.point(a.range.start), self.tree.point(a.range.start + 1));
        }
        (pair_upper_bound(&self.tree, u, v) + self.slack).min(parent_m)
    }

    fn update_estimate(&mut self, u: NodeId, v: NodeId) {
        let (ru, rv) = (self.tree.node(u).range.clone(), self.tree.node(v).range.clone());
        let (a, b) = if u == v {
            if ru.len() < 2 {
                return;
            }
            (ru.start, ru.end - 1)
        } else {
            (ru.start, rv.start)
        };
        self.consider(a, b);
    }

    /// Evaluates the points at tree positions `a` and `b`.
    fn consider(&mut self, a: usize, b: usize) {
        self.stats.distance_evaluations += 1;
        let d = distance(self.tree.point(a), self.tree.point(b));
        if d > self.delta {
            let (i, j) = (self.tree.original_index(a), self.tree.original_index(b));
            let pair = (i.min(j), i.max(j));
            self.delta = d;
            self.best = Some(pair);
            self.log(|| TraceEvent::EstimateUpdated { delta: d, pair });
        }
    }

    fn project(&mut self, u: NodeId, v: NodeId) {
        let (nu, nv) = (self.tree.node(u), self.tree.node(v));
        let axis: Vec<f64> = nv.center.iter().zip(&nu.center).map(|(b, a)| b - a).collect();
        let (mut lo, mut hi) = ((f64::INFINITY, 0), (f64::NEG_INFINITY, 0));
        for pos in nu.range.clone().chain(nv.range.clone()) {
            let t: f64 = self.tree.point(pos).iter().zip(&axis).map(|(p, a)| p * a).sum();
            if t < lo.0 {
                lo = (t, pos);
            }
            if t > hi.0 {
                hi = (t, pos);
            }
        }
        self.log(|| TraceEvent::PairProjected { u, v });
        self.consider(lo.1, hi.1);
    }

    fn split(&mut self, id: NodeId) -> (NodeId, NodeId) {
        let fresh = self.tree.node(id).children.is_none();
        let children = self.tree.split_node(id).expect("only non-degenerate nodes are split");
        if fresh {
            self.log(|| TraceEvent::NodeSplit { node: id });
        }
        children
    }

    fn expand(&mut self, u: NodeId, v: NodeId, m: f64) {
        let (du, dv) = (self.tree.node(u).is_degenerate(), self.tree.node(v).is_degenerate());
        // A pair of two degenerate nodes is settled by its representative.
        debug_assert!(!(du && dv));
        if du && dv {
            return;
        }
        if u == v {
            let (l, r) = self.split(u);
            self.offer(l, l, m);
            self.offer(l, r, m);
            self.offer(r, r, m);
            return;
        }
        match self.strategy {
            Strategy::Heap4Way => match (du, dv) {
                (false, false) => {
                    let (lu, ru) = self.split(u);
                    let (lv, rv) = self.split(v);
                    self.offer(lu, lv, m);
                    self.offer(lu, rv, m);
                    self.offer(ru, lv, m);
                    self.offer(ru, rv, m);
                }
                (false, true) => {
                    let (lu, ru) = self.split(u);
                    self.offer(lu, v, m);
                    self.offer(ru, v, m);
                }
                _ => {
                    let (lv, rv) = self.split(v);
                    self.offer(u, lv, m);
                    self.offer(u, rv, m);
                }
            },
            Strategy::HeapWspd | Strategy::FifoLevels => {
                if self.tree.node(u).lmax > self.tree.node(v).lmax {
                    let (lu, ru) = self.split(u);
                    self.offer(lu, v, m);
                    self.offer(ru, v, m);
                } else {
                    let (lv, rv) = self.split(v);
                    self.offer(u, lv, m);
                    self.offer(u, rv, m);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn random_set(seed: u64, n: usize, d: usize) -> PointSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..n * d).map(|_| rng.random_range(0.0..1.0)).collect();
        PointSet::from_flat(d, coords).unwrap()
    }

    /// O(n^2) reference, independent of the tree.
    fn oracle(ps: &PointSet) -> f64 {
        let mut best = 0.0_f64;
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                best = best.max(distance(ps.point(i), ps.point(j)));
            }
        }
        best
    }

    fn brute_max_between(tree: &FairSplitTree, u: NodeId, v: NodeId) -> f64 {
        let mut best = 0.0_f64;
        for a in tree.node(u).range.clone() {
            for b in tree.node(v).range.clone() {
                best = best.max(distance(tree.point(a), tree.point(b)));
            }
        }
        best
    }

    #[test]
    fn upper_bound_examples() {
        let ps = PointSet::from_rows(&[[0.0, 0.0], [3.0, 4.0]]).unwrap();
        let mut tree = FairSplitTree::build_root(&ps).unwrap();
        let (l, r) = tree.split_node(tree.root()).unwrap();
        assert_eq!(pair_upper_bound(&tree, l, r), 5.0);
        assert_eq!(pair_upper_bound(&tree, l, l), 0.0);
    }

    #[test]
    fn upper_bound_dominates_node_pairs() {
        for seed in 0..10 {
            let ps = random_set(seed, 40, 3);
            let tree = FairSplitTree::build_full(&ps).unwrap();
            let ids: Vec<NodeId> = tree.nodes().map(|(id, _)| id).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..200 {
                let u = ids[rng.random_range(0..ids.len())];
                let v = ids[rng.random_range(0..ids.len())];
                assert!(pair_upper_bound(&tree, u, v) >= brute_max_between(&tree, u, v));
            }
        }
    }

    #[test]
    fn child_bound_can_exceed_parent_bound() {
        // Four corners of a 2x2 square: the children are the two vertical
        // sides, whose balls stick out of the root ball.
        let ps = PointSet::from_rows(&[[0.0, 0.0], [0.0, 2.0], [2.0, 0.0], [2.0, 2.0]]).unwrap();
        let mut tree = FairSplitTree::build_root(&ps).unwrap();
        let root = tree.root();
        let (l, r) = tree.split_node(root).unwrap();
        assert!(pair_upper_bound(&tree, l, r) > pair_upper_bound(&tree, root, root));
    }

    #[test]
    fn prune_examples() {
        assert!(should_prune(10.0, 9.5, 0.1).unwrap());
        assert!(!should_prune(10.0, 9.5, 0.0).unwrap());
        assert!(should_prune(1.5 * 4.0, 4.0, 0.5).unwrap());
        assert!(should_prune(1.0, 2.0, -0.1).is_err());
    }

    #[test]
    fn unit_square_all_strategies() {
        let ps = PointSet::from_rows(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]).unwrap();
        for s in Strategy::ALL {
            let r = approx_diameter(&ps, 0.0, s).unwrap();
            assert_eq!(r.best_distance, 2f64.sqrt());
            assert!(r.best_pair == (0, 3) || r.best_pair == (1, 2));
        }
    }

    #[test]
    fn two_points_need_one_evaluation() {
        let ps = PointSet::from_rows(&[[0.0, 1.0, 2.0], [3.0, -1.0, 0.5]]).unwrap();
        for s in Strategy::ALL {
            let r = approx_diameter(&ps, 0.0, s).unwrap();
            assert_eq!(r.best_distance, ps.dist(0, 1));
            assert_eq!(r.stats.distance_evaluations, 1);
            assert_eq!(r.stats.pairs_created, 1);
        }
        let r = fs_directions_diameter(&ps, 0.1).unwrap();
        assert_eq!(r.best_distance, ps.dist(0, 1));
    }

    #[test]
    fn single_point_and_empty() {
        let ps = PointSet::from_rows(&[[1.0, 1.0]]).unwrap();
        let r = approx_diameter(&ps, 0.0, Strategy::HeapWspd).unwrap();
        assert_eq!((r.best_pair, r.best_distance), ((0, 0), 0.0));
        let empty = PointSet::from_flat(2, vec![]).unwrap();
        assert_eq!(approx_diameter(&empty, 0.0, Strategy::HeapWspd), Err(DiameterError::EmptyInput));
        assert!(approx_diameter(&ps, -1.0, Strategy::HeapWspd).is_err());
        assert!(fs_directions_diameter(&ps, 0.0).is_err());
    }

    #[test]
    fn duplicates_only() {
        let ps = PointSet::from_rows(&[[2.0, 2.0]; 5]).unwrap();
        for s in Strategy::ALL {
            let r = approx_diameter(&ps, 0.0, s).unwrap();
            assert_eq!(r.best_distance, 0.0);
        }
    }

    #[test]
    fn exact_on_random_cubes() {
        for seed in 0..10 {
            let ps = random_set(seed, 100, 3);
            let want = oracle(&ps);
            for s in Strategy::ALL {
                let r = approx_diameter(&ps, 0.0, s).unwrap();
                assert_eq!(r.best_distance, want, "seed {seed} {s:?}");
                assert_eq!(r.best_distance, ps.dist(r.best_pair.0, r.best_pair.1));
            }
        }
    }

    #[test]
    fn approximate_on_random_cubes() {
        for seed in 0..10 {
            let ps = random_set(seed + 100, 100, 3);
            let want = oracle(&ps);
            for s in Strategy::ALL {
                let r = approx_diameter(&ps, 0.1, s).unwrap();
                assert!(r.best_distance <= want && r.best_distance >= 0.9 * want);
            }
        }
    }

    #[test]
    fn directions_on_random_and_collinear_sets() {
        for seed in 0..5 {
            let ps = random_set(seed + 200, 500, 3);
            let r = fs_directions_diameter(&ps, 0.1).unwrap();
            let want = oracle(&ps);
            assert!(r.best_distance <= want && r.best_distance >= 0.9 * want);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rows: Vec<[f64; 3]> = (0..200)
            .map(|_| {
                let t: f64 = rng.random_range(-5.0..5.0);
                [1.0 + 2.0 * t, -3.0 + 0.5 * t, t]
            })
            .collect();
        let ps = PointSet::from_rows(&rows).unwrap();
        for eps in [0.01, 0.1, 0.5] {
            assert_eq!(fs_directions_diameter(&ps, eps).unwrap().best_distance, oracle(&ps));
        }
    }

    #[test]
    fn trace_invariants() {
        for seed in 0..10 {
            let ps = random_set(seed + 300, 60, 3);
            for s in Strategy::ALL {
                for eps in [0.0, 0.05] {
                    let run = approx_diameter_traced(&ps, eps, s).unwrap();
                    if s != Strategy::FifoLevels {
                        let ms = run.trace.handled_bounds();
                        assert!(ms.windows(2).all(|w| w[0] >= w[1]));
                    }
                    let est = run.trace.estimates();
                    assert!(est.windows(2).all(|w| w[0] < w[1]));
                    assert_eq!(*est.last().unwrap(), run.result.best_distance);
                    let created = run.trace.created_pairs();
                    let unique: HashSet<_> = created.iter().collect();
                    assert_eq!(unique.len(), created.len());
                    assert_eq!(created.len() as u64, run.result.stats.pairs_created);
                    // every discarded pair really is short enough
                    let limit = (1.0 + eps) * run.result.best_distance;
                    for (u, v) in run.trace.discarded_pairs() {
                        assert!(brute_max_between(&run.tree, u, v) <= limit);
                    }
                }
            }
        }
    }

    #[test]
    fn heap_order_breaks_ties_by_creation() {
        let a = Entry { m: 1.0, seq: 1, u: NodeId(0), v: NodeId(0) };
        let b = Entry { m: 1.0, seq: 2, u: NodeId(0), v: NodeId(0) };
        let mut h = BinaryHeap::from(vec![b, a]);
        assert_eq!(h.pop().unwrap().seq, 1);
    }
}
