//! SVG frames of the pair refinement: points, boxes of nodes in live pairs,
//! dark boxes for nodes no live pair can reach any more, and the current
//! best pair.

use std::collections::HashSet;
use std::fmt::Write as _;

use diameter_core::{FairSplitTree, NodeId, PointSet, TraceEvent, TracedRun};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

/// Maps data coordinates on two axes to the SVG canvas, y pointing up.
struct View {
    axes: (usize, usize),
    lo: (f64, f64),
    scale: f64,
}

impl View {
    fn new(points: &PointSet, axes: (usize, usize)) -> Self {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points.iter() {
            lo = (lo.0.min(p[axes.0]), lo.1.min(p[axes.1]));
            hi = (hi.0.max(p[axes.0]), hi.1.max(p[axes.1]));
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1);
        let scale = if span > 0.0 { (SIZE - 2.0 * MARGIN) / span } else { 1.0 };
        Self { axes, lo, scale }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.lo.0) * self.scale, SIZE - MARGIN - (y - self.lo.1) * self.scale)
    }

    fn rect(&self, out: &mut String, tree: &FairSplitTree, id: NodeId, class: &str) {
        let b = &tree.node(id).bbox;
        let (ax, ay) = self.axes;
        let (x0, y1) = self.map(b.lo[ax], b.lo[ay]);
        let (x1, y0) = self.map(b.hi[ax], b.hi[ay]);
        let _ = writeln!(
            out,
            r#"<rect class="{class}" x="{x0:.3}" y="{y0:.3}" width="{:.3}" height="{:.3}"/>"#,
            x1 - x0,
            y1 - y0
        );
    }
}

/// Renders `ceil(events / every)` frames; frame `j` shows the state after
/// event `min(j * every, events)`.
pub fn render_frames(points: &PointSet, run: &TracedRun, axes: (usize, usize), every: usize) -> Vec<String> {
    let view = View::new(points, axes);
    let events = &run.trace.events;
    let total = events.len();
    let mut frames = Vec::with_capacity(total.div_ceil(every));
    let mut seen: HashSet<NodeId> = HashSet::new();
    let mut best: Option<(usize, usize)> = None;
    run.trace.replay_frontier(|k, live| {
        match events[k] {
            TraceEvent::PairCreated { u, v, .. } => {
                seen.insert(u);
                seen.insert(v);
            }
            TraceEvent::EstimateUpdated { pair, .. } => best = Some(pair),
            _ => {}
        }
        if (k + 1) % every == 0 || k + 1 == total {
            frames.push(frame(points, &run.tree, &view, live, &seen, best, k + 1, total));
        }
    });
    frames
}

#[allow(clippy::too_many_arguments)]
fn frame(
    points: &PointSet,
    tree: &FairSplitTree,
    view: &View,
    live: &[(NodeId, NodeId)],
    seen: &HashSet<NodeId>,
    best: Option<(usize, usize)>,
    event: usize,
    total: usize,
) -> String {
    let live_nodes: HashSet<NodeId> = live.iter().flat_map(|&(u, v)| [u, v]).collect();
    // nodes containing a live node
    let mut above: HashSet<NodeId> = HashSet::new();
    for &id in &live_nodes {
        let mut cur = tree.node(id).parent;
        while let Some(p) = cur {
            if !above.insert(p) {
                break;
            }
            cur = tree.node(p).parent;
        }
    }
    let under_live = |id: NodeId| {
        let mut cur = Some(id);
        while let Some(c) = cur {
            if live_nodes.contains(&c) {
                return true;
            }
            cur = tree.node(c).parent;
        }
        false
    };
    let retired: HashSet<NodeId> = seen.iter().copied().filter(|&id| !above.contains(&id) && !under_live(id)).collect();
    let mut dark: Vec<NodeId> =
        retired.iter().copied().filter(|&id| tree.node(id).parent.is_none_or(|p| !retired.contains(&p))).collect();
    dark.sort();
    let mut shown: Vec<NodeId> = live_nodes.into_iter().collect();
    shown.sort();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" data-event="{event}" data-events="{total}" data-live-pairs="{}">"#,
        live.len()
    );
    out.push_str(
        "<style>.retired{fill:#333;fill-opacity:0.55;stroke:none}\
         .live{fill:none;stroke:#1f5fbf;stroke-width:1}\
         .pt{fill:#000}.best{stroke:#d62728;stroke-width:2}</style>\n",
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#fff"/>"##);
    for id in dark {
        view.rect(&mut out, tree, id, "retired");
    }
    for id in shown {
        view.rect(&mut out, tree, id, "live");
    }
    let (ax, ay) = view.axes;
    for p in points.iter() {
        let (x, y) = view.map(p[ax], p[ay]);
        let _ = writeln!(out, r#"<circle class="pt" cx="{x:.3}" cy="{y:.3}" r="1.5"/>"#);
    }
    if let Some((i, j)) = best {
        let (p, q) = (points.point(i), points.point(j));
        let (x1, y1) = view.map(p[ax], p[ay]);
        let (x2, y2) = view.map(q[ax], q[ay]);
        let _ = writeln!(out, r#"<line class="best" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
    }
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="14" font-family="monospace" font-size="12">event {event}/{total}, live pairs {}</text>"#,
        live.len()
    );
    out.push_str("</svg>\n");
    out
}
