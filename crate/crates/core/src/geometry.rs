//! Points, axis-aligned boxes and the elementary quantities derived from them.

use serde::{Deserialize, Serialize};

use crate::error::{DiameterError, Result};

/// An immutable set of `n` points in `R^d`, stored row-major.
///
/// A point is identified by its index; duplicate coordinates are allowed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a set from a flat row-major coordinate buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(DiameterError::InvalidDimension { dim, min: 1 });
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(DiameterError::DimensionMismatch { expected: dim, found: coords.len() % dim });
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(DiameterError::NonFinite { index: pos / dim, axis: pos % dim });
        }
        Ok(Self { dim, coords })
    }

    /// Builds a set from one coordinate vector per point.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(DiameterError::EmptyInput);
        };
        let dim = first.as_ref().len();
        let mut coords = Vec::with_capacity(dim * rows.len());
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(DiameterError::DimensionMismatch { expected: dim, found: row.len() });
            }
            coords.extend_from_slice(row);
        }
        Self::from_flat(dim, coords)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinates of point `i`.
    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// Distance between points `i` and `j` of this set.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        distance(self.point(i), self.point(j))
    }

    /// Largest absolute coordinate value, used to size rounding slack.
    pub fn max_abs_coord(&self) -> f64 {
        self.coords.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

/// Euclidean distance. Both slices must have the same length.
///
/// Every algorithm in the crate reports distances through this function, so
/// two routes that select the same pair produce bit-identical values.
#[inline]
pub fn distance(p: &[f64], q: &[f64]) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    p.iter()
        .zip(q)
        .map(|(a, b)| {
            let t = a - b;
            t * t
        })
        .sum::<f64>()
        .sqrt()
}

/// [`distance`] with an explicit dimension check.
pub fn try_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(DiameterError::DimensionMismatch { expected: p.len(), found: q.len() });
    }
    Ok(distance(p, q))
}

/// Axis-aligned box with `lo[i] <= hi[i]` on every axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aabb {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Aabb {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(DiameterError::DimensionMismatch { expected: lo.len(), found: hi.len() });
        }
        if !lo.iter().zip(&hi).all(|(l, h)| l <= h) {
            return Err(DiameterError::InvalidParameter("box with lo > hi".into()));
        }
        Ok(Self { lo, hi })
    }

    /// Tight box around a nonempty sequence of points.
    pub fn around<'a, I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let mut it = points.into_iter();
        let first = it.next().ok_or(DiameterError::EmptyInput)?;
        let mut lo = first.to_vec();
        let mut hi = first.to_vec();
        for p in it {
            if p.len() != lo.len() {
                return Err(DiameterError::DimensionMismatch { expected: lo.len(), found: p.len() });
            }
            for ((l, h), &c) in lo.iter_mut().zip(hi.iter_mut()).zip(p) {
                if c < *l {
                    *l = c;
                }
                if c > *h {
                    *h = c;
                }
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn extent(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    /// Center of the box and half its diagonal, i.e. the smallest ball
    /// centered at the box center that contains the box.
    pub fn center_and_radius(&self) -> (Vec<f64>, f64) {
        let center = self.lo.iter().zip(&self.hi).map(|(l, h)| 0.5 * (l + h)).collect();
        (center, 0.5 * distance(&self.lo, &self.hi))
    }

    /// Axis of maximum extent and that extent; ties go to the lowest axis.
    pub fn longest_edge(&self) -> (usize, f64) {
        let mut best = (0, self.extent(0));
        for axis in 1..self.dim() {
            let e = self.extent(axis);
            if e > best.1 {
                best = (axis, e);
            }
        }
        best
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(c, (l, h))| l <= c && c <= h)
    }

    pub fn contains_box(&self, other: &Aabb) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }
}

/// Tight bounding box of a whole point set.
pub fn bounding_box(points: &PointSet) -> Result<Aabb> {
    Aabb::around(points.iter())
}
