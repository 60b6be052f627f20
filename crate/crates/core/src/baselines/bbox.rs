use std::time::Instant;

use super::require_points;
use crate::error::Result;
use crate::geometry::PointSet;
use crate::pair_diameter::{DiameterResult, RunStats};

/// Records, for every axis, a point on each of the two opposite faces of
/// the bounding box and returns the longest pair among these `2d` points.
/// Within a factor `sqrt(d)` of the diameter. One pass over the input.
///
/// Ties on the low face go to the first point, on the high face to the
/// last, so the cube corners in input order yield a main diagonal.
pub fn bbox_diameter(points: &PointSet) -> Result<DiameterResult> {
    require_points(points, 2)?;
    let start = Instant::now();
    let d = points.dim();
    let mut lo = vec![0usize; d];
    let mut hi = vec![0usize; d];
    for (i, p) in points.iter().enumerate().skip(1) {
        for axis in 0..d {
            if p[axis] < points.point(lo[axis])[axis] {
                lo[axis] = i;
            }
            if p[axis] >= points.point(hi[axis])[axis] {
                hi[axis] = i;
            }
        }
    }
    let mut extremes: Vec<usize> = lo.into_iter().chain(hi).collect();
    extremes.sort_unstable();
    extremes.dedup();
    let (mut best, mut pair, mut evals) = (f64::NEG_INFINITY, (0, 0), 0u64);
    for (k, &a) in extremes.iter().enumerate() {
        for &b in &extremes[k + 1..] {
            evals += 1;
            let dist = points.dist(a, b);
            if dist > best {
                best = dist;
                pair = (a, b);
            }
        }
    }
    let stats = RunStats { distance_evaluations: evals, wall_time: start.elapsed(), ..RunStats::default() };
    Ok(DiameterResult::from_pair(points, pair.0, pair.1, stats))
}
