//! Recursive projection onto hyperplanes down to the plane.

use std::f64::consts::PI;
use std::time::Instant;

use super::{require_points, subset};
use crate::baselines::grid::{clean_members, resolution_for_loss};
use crate::baselines::hull::hull_diameter_2d;
use crate::error::{DiameterError, Result, check_eps_positive};
use crate::geometry::{PointSet, bounding_box};
use crate::pair_diameter::{DiameterResult, RunStats, Strategy, approx_diameter};

/// Solver used once the recursion reaches two dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base2d {
    /// Convex hull and antipodal pairs; exact.
    ConvexHullExact,
    /// The pair search with the four-way heap expansion at the remaining
    /// eps.
    FsVariant,
}

/// Diameter by projecting onto a family of hyperplanes, recursing on each
/// projection with half the error budget, and keeping the longest pair of
/// original points found.
///
/// The hyperplane normals are evenly spaced in the plane of the two longest
/// bounding-box axes, so some hyperplane contains the diameter direction up
/// to a small angle. Before projecting, a grid cleaning step drops the
/// points of cells that are not extreme along some grid line; it is kept only when it shrinks the set, and
/// then takes a share of the budget.
///
/// A hyperplane is skipped when twice the largest distance of a projected
/// point from the center of the projected bounding box, shrunk by the
/// recursion's eps, does not exceed the longest pair found so far: the
/// recursion could not improve the guarantee there. The search starts from
/// the longest pair of axis extremes.
pub fn chan_diameter(points: &PointSet, eps: f64, base: Base2d) -> Result<DiameterResult> {
    check_eps_positive(eps)?;
    if points.dim() < 2 {
        return Err(DiameterError::InvalidDimension { dim: points.dim(), min: 2 });
    }
    require_points(points, 2)?;
    let start = Instant::now();
    let mut stats = RunStats::default();
    let ids: Vec<usize> = (0..points.len()).collect();
    let seed = super::bbox_diameter(points)?;
    let mut best = Best { dist: seed.best_distance, pair: seed.best_pair };
    stats.distance_evaluations += seed.stats.distance_evaluations;
    solve(points, points.clone(), ids, eps, base, &mut stats, &mut best)?;
    stats.wall_time = start.elapsed();
    Ok(DiameterResult::from_pair(points, best.pair.0, best.pair.1, stats))
}

/// Longest pair of original points seen so far.
struct Best {
    dist: f64,
    pair: (usize, usize),
}

impl Best {
    fn offer(&mut self, orig: &PointSet, a: usize, b: usize, stats: &mut RunStats) {
        stats.distance_evaluations += 1;
        let d = orig.dist(a, b);
        if d > self.dist {
            self.dist = d;
            self.pair = (a, b);
        }
    }
}

/// Twice the largest distance from the bounding-box center.
fn diameter_upper_bound(points: &PointSet) -> Result<f64> {
    let (center, _) = bounding_box(points)?.center_and_radius();
    Ok(2.0 * points.iter().map(|p| crate::geometry::distance(p, &center)).fold(0.0, f64::max))
}

/// `work` holds projected coordinates; `ids[k]` is the original index of
/// its row `k`. On return, `best` is at least `(1 - eps)` times the
/// diameter of `work`.
fn solve(
    orig: &PointSet,
    work: PointSet,
    ids: Vec<usize>,
    eps: f64,
    base: Base2d,
    stats: &mut RunStats,
    best: &mut Best,
) -> Result<()> {
    if work.len() == 1 {
        return Ok(());
    }
    let dim = work.dim();
    if dim == 2 {
        let (a, b) = match base {
            Base2d::ConvexHullExact => hull_diameter_2d(&work)?,
            Base2d::FsVariant => {
                let r = approx_diameter(&work, eps, Strategy::Heap4Way)?;
                add_stats(stats, &r.stats);
                r.best_pair
            }
        };
        best.offer(orig, ids[a], ids[b], stats);
        return Ok(());
    }

    // With cleaning: grid eps/4, angle eps/4, recursion eps/2.
    // Without: angle eps/2, recursion eps/2.
    let reps = clean_members(&work, resolution_for_loss(eps / 4.0, dim)?)?;
    let (work, ids, angle) = if reps.len() < work.len() {
        let ids = reps.iter().map(|&k| ids[k]).collect();
        (subset(&work, &reps), ids, (eps / 2.0).sqrt())
    } else {
        (work, ids, eps.sqrt())
    };

    let bbox = bounding_box(&work)?;
    let mut axes: Vec<usize> = (0..dim).collect();
    axes.sort_by(|&p, &q| bbox.extent(q).total_cmp(&bbox.extent(p)).then(p.cmp(&q)));
    let (ax, ay) = (axes[0].min(axes[1]), axes[0].max(axes[1]));

    let planes = (PI / (2.0 * angle.min(PI / 2.0))).ceil() as usize;
    for j in 0..planes {
        let (s, c) = (j as f64 * PI / planes as f64).sin_cos();
        // Normal (c, s) in the (ax, ay) plane; the in-plane coordinate
        // along (-s, c) replaces the two axes.
        let mut coords = Vec::with_capacity(work.len() * (dim - 1));
        for p in work.iter() {
            coords.extend(p.iter().enumerate().filter(|&(k, _)| k != ax && k != ay).map(|(_, &x)| x));
            coords.push(-s * p[ax] + c * p[ay]);
        }
        let proj = PointSet::from_flat(dim - 1, coords)?;
        if (1.0 - eps / 2.0) * diameter_upper_bound(&proj)? <= best.dist {
            continue;
        }
        solve(orig, proj, ids.clone(), eps / 2.0, base, stats, best)?;
    }
    Ok(())
}

fn add_stats(acc: &mut RunStats, r: &RunStats) {
    acc.pairs_created += r.pairs_created;
    acc.distance_evaluations += r.distance_evaluations;
    acc.nodes_built += r.nodes_built;
    acc.heap_ops += r.heap_ops;
}
