//! Covers of the sphere of directions and the projection search built on
//! them.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use super::{extremes_along, require_points};
use crate::baselines::grid::{clean_representatives, resolution_for_loss};
use crate::error::{DiameterError, Result, check_eps_positive};
use crate::geometry::PointSet;
use crate::pair_diameter::{DiameterResult, RunStats};

/// Unit vectors such that every line through the origin makes an angle of
/// at most `angular_radius` with one of them.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionCover {
    pub dim: usize,
    pub angular_radius: f64,
    pub directions: Vec<Vec<f64>>,
}

impl DirectionCover {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Smallest angle between the line spanned by `u` and a cover direction.
    pub fn angle_to(&self, u: &[f64]) -> f64 {
        let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        self.directions
            .iter()
            .map(|v| {
                let c: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum::<f64>() / norm;
                c.abs().min(1.0).acos()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Cover with caps of angular radius `sqrt(2 eps)`, enough for projections
/// to lose at most a factor `1 - eps`. Antipodal directions are identified,
/// so only a hemisphere is covered.
pub fn direction_cover(eps: f64, dim: usize) -> Result<DirectionCover> {
    check_eps_positive(eps)?;
    if dim < 2 {
        return Err(DiameterError::InvalidDimension { dim, min: 2 });
    }
    let radius = (2.0 * eps).sqrt();
    Ok(DirectionCover { dim, angular_radius: radius, directions: sphere_cover(dim, radius, true) })
}

/// Unit vectors of `R^dim` within angle `r` of every point of the sphere,
/// or of the hemisphere with nonnegative last coordinate.
///
/// For `dim >= 3` the sphere is cut into bands of polar angle around the
/// last axis; each band gets a cover of the lower-dimensional sphere of
/// azimuths. With band half-height `h/2` and azimuth radius `b`, the chord
/// between a vector and its band representative is at most
/// `sqrt(h^2/4 + s*b^2)` where `s` bounds the product of the two polar
/// sines, so choosing both terms `<= C^2/2` with `C = 2 sin(r/2)` keeps the
/// angle below `r`.
fn sphere_cover(dim: usize, r: f64, hemisphere: bool) -> Vec<Vec<f64>> {
    let span = if hemisphere { FRAC_PI_2 } else { PI };
    if r >= span {
        let mut v = vec![0.0; dim];
        v[dim - 1] = 1.0;
        return vec![v];
    }
    if dim == 1 {
        return if hemisphere { vec![vec![1.0]] } else { vec![vec![1.0], vec![-1.0]] };
    }
    if dim == 2 {
        let total = 2.0 * span;
        let m = (total / (2.0 * r)).ceil() as usize;
        return (0..m)
            .map(|j| {
                let t = (j as f64 + 0.5) * total / m as f64;
                vec![t.cos(), t.sin()]
            })
            .collect();
    }
    let chord = 2.0 * (r / 2.0).sin();
    let bands = (span / (std::f64::consts::SQRT_2 * chord)).ceil() as usize;
    let h = span / bands as f64;
    let mut out = Vec::new();
    for b in 0..bands {
        let phi = (b as f64 + 0.5) * h;
        let (lo, hi) = (phi - h / 2.0, phi + h / 2.0);
        let sin_max = if lo <= FRAC_PI_2 && FRAC_PI_2 <= hi { 1.0 } else { lo.sin().max(hi.sin()) };
        let s = sin_max * phi.sin();
        let beta = chord / (2.0 * s).sqrt();
        let (sp, cp) = phi.sin_cos();
        for w in sphere_cover(dim - 1, beta, false) {
            let mut v: Vec<f64> = w.iter().map(|x| x * sp).collect();
            v.push(cp);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            out.push(v);
        }
    }
    out
}

/// Projects the points onto every direction of a cover and returns the
/// longest pair of extremes.
///
/// With `pre_snap`, the search runs on one representative per cell of a
/// cleaned grid, splitting the error budget evenly between grid and cover.
pub fn direction_search_diameter(points: &PointSet, eps: f64, pre_snap: bool) -> Result<DiameterResult> {
    check_eps_positive(eps)?;
    require_points(points, 2)?;
    let start = Instant::now();
    let (ids, eps_dir) = if pre_snap {
        let k = resolution_for_loss(eps / 2.0, points.dim())?;
        (clean_representatives(points, k)?, eps / 2.0)
    } else {
        ((0..points.len()).collect(), eps)
    };
    let directions =
        if points.dim() == 1 { vec![vec![1.0]] } else { direction_cover(eps_dir, points.dim())?.directions };
    let (mut best, mut pair) = (f64::NEG_INFINITY, (0, 0));
    for dir in &directions {
        let (a, b) = extremes_along(ids.iter().map(|&i| (i, points.point(i))), dir);
        let d = points.dist(a, b);
        if d > best {
            best = d;
            pair = (a, b);
        }
    }
    let stats =
        RunStats { distance_evaluations: directions.len() as u64, wall_time: start.elapsed(), ..RunStats::default() };
    Ok(DiameterResult::from_pair(points, pair.0, pair.1, stats))
}
