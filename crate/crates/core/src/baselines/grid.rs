//! Snapping to a uniform grid over the bounding box, and grid cleaning.

use std::time::Instant;

use super::{require_points, subset};
use crate::error::{DiameterError, Result, check_eps_positive};
use crate::geometry::{Aabb, PointSet, bounding_box};
use crate::pair_diameter::{DiameterResult, RunStats, Strategy, approx_diameter, fs_directions_diameter};

/// Grid resolution for snapping with relative error `eps` in dimension `d`:
/// `k = ceil(sqrt(d) / eps)` cells per axis.
///
/// A cell diagonal is then at most `eps * diam`, which bounds how far the
/// diameter of the cell centers can move from the input diameter, in both
/// directions. In one dimension this is `ceil(1 / eps)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSnapConfig {
    pub eps: f64,
    pub k: usize,
}

impl GridSnapConfig {
    pub fn new(eps: f64, dim: usize) -> Result<Self> {
        check_eps_positive(eps)?;
        if dim == 0 {
            return Err(DiameterError::InvalidDimension { dim, min: 1 });
        }
        let k = ((dim as f64).sqrt() / eps).ceil().clamp(1.0, u32::MAX as f64) as usize;
        Ok(Self { eps, k })
    }
}

/// Output of [`grid_snap`].
#[derive(Clone, Debug)]
pub struct SnappedPoints {
    /// Centers of the cells kept after cleaning.
    pub points: PointSet,
    /// Integer cell coordinates of each kept center.
    pub cells: Vec<Vec<usize>>,
    /// For each kept center, the first input point that fell into its cell.
    pub representatives: Vec<usize>,
    /// Number of distinct occupied cells before cleaning.
    pub snapped_len: usize,
    pub k: usize,
}

/// Cells per axis so that replacing every point by any point of its cell
/// changes distances by at most `loss * diam`.
///
/// Cleaning preserves the diameter of the occupied cell centers exactly, and
/// every point is within half a cell diagonal (at most `sqrt(d) diam / 2k`)
/// of its center. Going from the input to the centers and back to one
/// point per cell thus costs at most `2 sqrt(d) diam / k`.
pub fn resolution_for_loss(loss: f64, dim: usize) -> Result<usize> {
    check_eps_positive(loss)?;
    Ok((2.0 * (dim as f64).sqrt() / loss).ceil().clamp(1.0, u32::MAX as f64) as usize)
}

/// Cell coordinates of every point (row-major, like the points), the
/// first point of each occupied cell, and the cells that survive cleaning.
struct Cleaned {
    dim: usize,
    keys: Vec<usize>,
    /// First point of the cell of each point.
    rep_of: Vec<usize>,
    /// First points of the kept cells, in increasing order.
    kept: Vec<usize>,
    /// Number of occupied cells before cleaning.
    snapped: usize,
}

impl Cleaned {
    fn key(&self, i: usize) -> &[usize] {
        &self.keys[i * self.dim..(i + 1) * self.dim]
    }
}

fn cell_keys(points: &PointSet, bbox: &Aabb, k: usize) -> Vec<usize> {
    let mut keys = Vec::with_capacity(points.coords().len());
    for p in points.iter() {
        for (axis, &c) in p.iter().enumerate() {
            let ext = bbox.extent(axis);
            let t = if ext > 0.0 { ((c - bbox.lo[axis]) / ext * k as f64).floor() } else { 0.0 };
            keys.push((t.max(0.0) as usize).min(k - 1));
        }
    }
    keys
}

/// Deduplicates cells and keeps, for every axis in turn, only the two
/// extreme cells of each axis-parallel line of occupied cells.
fn clean(points: &PointSet, k: usize) -> Result<Cleaned> {
    require_points(points, 1)?;
    let bbox = bounding_box(points)?;
    let (n, dim) = (points.len(), points.dim());
    let keys = cell_keys(points, &bbox, k);
    let key = |i: usize| &keys[i * dim..(i + 1) * dim];
    let mut rep_of = vec![0; n];
    let mut kept = Vec::new();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key(a).cmp(key(b)).then(a.cmp(&b)));
    for run in order.chunk_by(|&a, &b| key(a) == key(b)) {
        run.iter().for_each(|&i| rep_of[i] = run[0]);
        kept.push(run[0]);
    }
    kept.sort_unstable();
    let snapped = kept.len();

    let mut keep = vec![false; n];
    for axis in 0..dim {
        let off_axis = |i: usize| key(i).iter().enumerate().filter(move |&(x, _)| x != axis).map(|(_, v)| *v);
        let mut by_line = kept.clone();
        by_line.sort_by(|&a, &b| off_axis(a).cmp(off_axis(b)).then(key(a)[axis].cmp(&key(b)[axis])));
        for run in by_line.chunk_by(|&a, &b| off_axis(a).eq(off_axis(b))) {
            keep[run[0]] = true;
            keep[run[run.len() - 1]] = true;
        }
        kept.retain(|&i| std::mem::replace(&mut keep[i], false));
    }
    Ok(Cleaned { dim, keys, rep_of, kept, snapped })
}

/// Snaps every point to the center of its cell in a `k^d` grid over the
/// bounding box (`k` from [`GridSnapConfig`]), removes duplicates and cleans
/// the grid so that every axis-parallel line keeps at most its two extreme
/// cells. The diameter of the result is within `1 +- eps` of the input's.
pub fn grid_snap(points: &PointSet, eps: f64) -> Result<SnappedPoints> {
    let cfg = GridSnapConfig::new(eps, points.dim())?;
    snap_with_resolution(points, cfg.k)
}

pub(crate) fn snap_with_resolution(points: &PointSet, k: usize) -> Result<SnappedPoints> {
    let cleaned = clean(points, k)?;
    let bbox = bounding_box(points)?;
    let dim = points.dim();
    let mut coords = Vec::with_capacity(cleaned.kept.len() * dim);
    let mut cells = Vec::with_capacity(cleaned.kept.len());
    for &rep in &cleaned.kept {
        let key = cleaned.key(rep);
        cells.push(key.to_vec());
        for (axis, &c) in key.iter().enumerate() {
            coords.push(bbox.lo[axis] + bbox.extent(axis) * (c as f64 + 0.5) / k as f64);
        }
    }
    let points = PointSet::from_flat(dim, coords)?;
    Ok(SnappedPoints { points, cells, representatives: cleaned.kept, snapped_len: cleaned.snapped, k })
}

/// Indices of the input points standing in for the cleaned `k^d` grid: one
/// per kept cell, in first-occurrence order.
pub fn clean_representatives(points: &PointSet, k: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(DiameterError::InvalidParameter("grid resolution must be positive".into()));
    }
    Ok(clean(points, k)?.kept)
}

/// Indices of all input points lying in cells that survive cleaning, in
/// input order. Extreme points of the input are never dropped along a
/// line, so collinear sets keep their endpoints.
pub(crate) fn clean_members(points: &PointSet, k: usize) -> Result<Vec<usize>> {
    let cleaned = clean(points, k)?;
    let mut kept = vec![false; points.len()];
    cleaned.kept.iter().for_each(|&i| kept[i] = true);
    Ok((0..points.len()).filter(|&i| kept[cleaned.rep_of[i]]).collect())
}

/// Cleans with half the error budget and runs the level-order pair search
/// with the other half on the surviving input points.
pub fn grid_levels_diameter(points: &PointSet, eps: f64) -> Result<DiameterResult> {
    cleaned_then(points, eps, |sub, e| approx_diameter(sub, e, Strategy::FifoLevels))
}

/// Cleans with half the error budget, then runs the direction-shortcut pair
/// search with the other half.
pub fn grid_fs_directions_diameter(points: &PointSet, eps: f64) -> Result<DiameterResult> {
    cleaned_then(points, eps, fs_directions_diameter)
}

fn cleaned_then(
    points: &PointSet,
    eps: f64,
    solve: impl FnOnce(&PointSet, f64) -> Result<DiameterResult>,
) -> Result<DiameterResult> {
    check_eps_positive(eps)?;
    require_points(points, 2)?;
    let start = Instant::now();
    let k = resolution_for_loss(eps / 2.0, points.dim())?;
    let reps = clean_representatives(points, k)?;
    let sub = subset(points, &reps);
    let inner = solve(&sub, eps / 2.0)?;
    let (a, b) = inner.best_pair;
    let stats = RunStats { wall_time: start.elapsed(), ..inner.stats };
    Ok(DiameterResult::from_pair(points, reps[a], reps[b], stats))
}
