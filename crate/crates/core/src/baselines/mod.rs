//! Comparison algorithms: brute force, constant-factor approximations
//! (bounding box, PCA) and eps-approximations based on grids, direction
//! covers and recursive hyperplane projection.

mod bbox;
mod brute;
mod chan;
mod directions;
mod grid;
mod hull;
mod pca;

pub use bbox::bbox_diameter;
pub use brute::brute_force_diameter;
pub use chan::{Base2d, chan_diameter};
pub use directions::{DirectionCover, direction_cover, direction_search_diameter};
pub use grid::{
    GridSnapConfig, SnappedPoints, clean_representatives, grid_fs_directions_diameter, grid_levels_diameter, grid_snap,
    resolution_for_loss,
};
pub use hull::{convex_hull_2d, hull_diameter_2d};
pub use pca::pca_diameter;

use crate::error::{DiameterError, Result};
use crate::geometry::PointSet;

pub(crate) fn require_points(points: &PointSet, needed: usize) -> Result<()> {
    if points.len() < needed {
        return Err(DiameterError::TooFewPoints { needed, got: points.len() });
    }
    Ok(())
}

/// Positions of the minimum and maximum of `<p, dir>` over `ids`; the first
/// occurrence wins ties.
pub(crate) fn extremes_along<'a>(points: impl Iterator<Item = (usize, &'a [f64])>, dir: &[f64]) -> (usize, usize) {
    let (mut lo, mut hi) = ((f64::INFINITY, 0), (f64::NEG_INFINITY, 0));
    for (id, p) in points {
        let t: f64 = p.iter().zip(dir).map(|(a, b)| a * b).sum();
        if t < lo.0 {
            lo = (t, id);
        }
        if t > hi.0 {
            hi = (t, id);
        }
    }
    (lo.1, hi.1)
}

/// Subset of `points` in the order of `ids`.
pub(crate) fn subset(points: &PointSet, ids: &[usize]) -> PointSet {
    let coords = ids.iter().flat_map(|&i| points.point(i).iter().copied()).collect();
    PointSet::from_flat(points.dim(), coords).expect("subset of a valid set")
}
