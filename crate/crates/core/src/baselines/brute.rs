use std::time::Instant;

use super::require_points;
use crate::error::Result;
use crate::geometry::PointSet;
use crate::pair_diameter::{DiameterResult, RunStats};

/// Exact diameter by checking every pair. Among equal maxima the
/// lexicographically smallest index pair is returned.
pub fn brute_force_diameter(points: &PointSet) -> Result<DiameterResult> {
    require_points(points, 2)?;
    let start = Instant::now();
    let n = points.len();
    let (mut best, mut pair) = (f64::NEG_INFINITY, (0, 1));
    for i in 0..n {
        let p = points.point(i);
        for j in i + 1..n {
            let d = crate::geometry::distance(p, points.point(j));
            if d > best {
                best = d;
                pair = (i, j);
            }
        }
    }
    let stats =
        RunStats { distance_evaluations: (n * (n - 1) / 2) as u64, wall_time: start.elapsed(), ..RunStats::default() };
    Ok(DiameterResult::from_pair(points, pair.0, pair.1, stats))
}
