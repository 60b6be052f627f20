//! Planar convex hull and exact diameter by an antipodal-pair scan.

use crate::error::{DiameterError, Result};
use crate::geometry::PointSet;

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn check_planar(points: &PointSet) -> Result<()> {
    if points.dim() != 2 {
        return Err(DiameterError::DimensionMismatch { expected: 2, found: points.dim() });
    }
    if points.is_empty() {
        return Err(DiameterError::EmptyInput);
    }
    Ok(())
}

/// Indices of the hull vertices in counterclockwise order, starting at the
/// lexicographically smallest point. Collinear boundary points are dropped.
pub fn convex_hull_2d(points: &PointSet) -> Result<Vec<usize>> {
    check_planar(points)?;
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (points.point(a), points.point(b));
        p[0].total_cmp(&q[0]).then(p[1].total_cmp(&q[1]))
    });
    order.dedup_by(|a, b| points.point(*a) == points.point(*b));
    if order.len() < 3 {
        return Ok(order);
    }
    let chain = |iter: &mut dyn Iterator<Item = usize>| {
        let mut out: Vec<usize> = Vec::new();
        for i in iter {
            while out.len() >= 2
                && cross(points.point(out[out.len() - 2]), points.point(out[out.len() - 1]), points.point(i)) <= 0.0
            {
                out.pop();
            }
            out.push(i);
        }
        out.pop();
        out
    };
    let mut hull = chain(&mut order.iter().copied());
    hull.extend(chain(&mut order.iter().rev().copied()));
    Ok(hull)
}

/// Exact diameter of a planar set, as a pair of indices.
pub fn hull_diameter_2d(points: &PointSet) -> Result<(usize, usize)> {
    let hull = convex_hull_2d(points)?;
    let h = hull.len();
    if h == 1 {
        return Ok((hull[0], hull[0]));
    }
    let pt = |k: usize| points.point(hull[k % h]);
    let mut best = (f64::NEG_INFINITY, (hull[0], hull[1]));
    let mut consider = |a: usize, b: usize| {
        let d = points.dist(hull[a % h], hull[b % h]);
        if d > best.0 {
            best = (d, (hull[a % h], hull[b % h]));
        }
    };
    if h == 2 {
        consider(0, 1);
        return Ok(best.1);
    }
    let mut j = 1;
    for i in 0..h {
        while cross(pt(i), pt(i + 1), pt(j + 1)) > cross(pt(i), pt(i + 1), pt(j)) {
            j += 1;
        }
        consider(i, j);
        consider(i + 1, j);
        consider(i, j + 1);
    }
    Ok(best.1)
}
