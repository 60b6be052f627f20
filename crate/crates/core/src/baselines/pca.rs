use std::time::Instant;

use nalgebra::{DMatrix, SymmetricEigen};

use super::{extremes_along, require_points};
use crate::error::{DiameterError, Result};
use crate::geometry::PointSet;
use crate::pair_diameter::{DiameterResult, RunStats};

/// Extreme pairs along the principal axes of the covariance matrix;
/// returns the longest.
pub fn pca_diameter(points: &PointSet) -> Result<DiameterResult> {
    require_points(points, 2)?;
    let start = Instant::now();
    let (n, d) = (points.len(), points.dim());
    let mut mean = vec![0.0; d];
    for p in points.iter() {
        mean.iter_mut().zip(p).for_each(|(m, c)| *m += c);
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let mut cov = DMatrix::<f64>::zeros(d, d);
    for p in points.iter() {
        for a in 0..d {
            let da = p[a] - mean[a];
            for b in a..d {
                cov[(a, b)] += da * (p[b] - mean[b]);
            }
        }
    }
    for a in 0..d {
        for b in a..d {
            cov[(a, b)] /= n as f64;
            cov[(b, a)] = cov[(a, b)];
        }
    }
    let eig = SymmetricEigen::try_new(cov, f64::EPSILON, 10_000).ok_or(DiameterError::EigenFailure)?;
    let (mut best, mut pair) = (f64::NEG_INFINITY, (0, 0));
    for col in eig.eigenvectors.column_iter() {
        let dir: Vec<f64> = col.iter().copied().collect();
        if dir.iter().any(|x| !x.is_finite()) {
            return Err(DiameterError::EigenFailure);
        }
        let (a, b) = extremes_along(points.iter().enumerate(), &dir);
        let dist = points.dist(a, b);
        if dist > best {
            best = dist;
            pair = (a, b);
        }
    }
    let stats = RunStats { distance_evaluations: d as u64, wall_time: start.elapsed(), ..RunStats::default() };
    Ok(DiameterResult::from_pair(points, pair.0, pair.1, stats))
}
