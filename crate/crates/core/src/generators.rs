//! Seeded synthetic point sets.
//!
//! All generators draw from ChaCha8 seeded with `seed_from_u64`, so a
//! [`GenSpec`] always produces the same coordinates.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{DiameterError, Result};
use crate::geometry::PointSet;

/// Identifier of the pseudo-random generator, recorded in result metadata.
pub const RNG_ALGORITHM: &str = "chacha8-seed_from_u64";

pub const DEFAULT_ARC_WIDTH: f64 = 0.05;
pub const DEFAULT_ARC_SEPARATION: f64 = 1.0;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points uniform on the unit sphere in `R^3`.
pub fn gen_sphere(n: usize, seed: u64) -> Result<PointSet> {
    gen_sphere_dim(n, 3, seed)
}

/// `n` points uniform on the unit sphere in `R^d` (normalized Gaussians).
pub fn gen_sphere_dim(n: usize, d: usize, seed: u64) -> Result<PointSet> {
    check_n(n, 1)?;
    check_dim(d, 1)?;
    let mut rng = rng(seed);
    let mut coords = Vec::with_capacity(n * d);
    let mut v = vec![0.0; d];
    for _ in 0..n {
        loop {
            for x in v.iter_mut() {
                *x = StandardNormal.sample(&mut rng);
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                coords.extend(v.iter().map(|x| x / norm));
                break;
            }
        }
    }
    PointSet::from_flat(d, coords)
}

/// `n` points uniform in `[0, 1)^d`.
pub fn gen_cube(n: usize, d: usize, seed: u64) -> Result<PointSet> {
    check_n(n, 1)?;
    check_dim(d, 1)?;
    let mut rng = rng(seed);
    let coords = (0..n * d).map(|_| rng.random::<f64>()).collect();
    PointSet::from_flat(d, coords)
}

/// `n` evenly spaced parameter samples of the ellipse `(a cos t, b sin t)`
/// in the first two coordinates, remaining coordinates zero. Parameter
/// zero is always sampled, and `pi` too when `n` is even.
pub fn gen_ellipse(n: usize, a: f64, b: f64, d: usize) -> Result<PointSet> {
    check_n(n, 1)?;
    check_dim(d, 2)?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(DiameterError::InvalidParameter("ellipse axes must be finite".into()));
    }
    let mut coords = vec![0.0; n * d];
    for i in 0..n {
        let t = 2.0 * PI * i as f64 / n as f64;
        coords[i * d] = a * t.cos();
        coords[i * d + 1] = b * t.sin();
    }
    PointSet::from_flat(d, coords)
}

/// Two short circular arcs, each centered on the other's midpoint.
///
/// Arc A lies on the circle of radius `separation` around the midpoint of
/// arc B and vice versa, so every pair of points across the arcs is at
/// distance `separation` up to fourth-order terms in the arc angle. For
/// `d >= 3` the arcs lie in orthogonal planes (their tangents are
/// orthogonal); for `d == 2` they share the plane. With `rotate`, the
/// configuration is turned so the inter-arc axis is the diagonal
/// `(1, 1, 1)/sqrt(3)` (`(1, 1)/sqrt(2)` in the plane).
pub fn gen_arcs(n: usize, seed: u64, arc_width: f64, separation: f64, rotate: bool) -> Result<PointSet> {
    gen_arcs_dim(n, 3, seed, arc_width, separation, rotate)
}

pub fn gen_arcs_dim(n: usize, d: usize, seed: u64, arc_width: f64, separation: f64, rotate: bool) -> Result<PointSet> {
    check_n(n, 2)?;
    check_dim(d, 2)?;
    if !n.is_multiple_of(2) {
        return Err(DiameterError::InvalidParameter(format!("arcs need an even point count, got {n}")));
    }
    if !(arc_width > 0.0 && arc_width < PI && separation > 0.0 && separation.is_finite()) {
        return Err(DiameterError::InvalidParameter(format!(
            "arc width {arc_width} must be in (0, pi) and separation {separation} positive"
        )));
    }
    let mut rng = rng(seed);
    let half = arc_width / 2.0;
    let s = separation;
    let mut coords = vec![0.0; n * d];
    for i in 0..n {
        let t: f64 = rng.random_range(-half..=half);
        let p = &mut coords[i * d..(i + 1) * d];
        if i < n / 2 {
            // arc A through the origin, around (s, 0, 0), tangent along y
            p[0] = s - s * t.cos();
            p[1] = s * t.sin();
        } else if d == 2 {
            // arc B through (s, 0), around the origin, tangent along y
            p[0] = s * t.cos();
            p[1] = s * t.sin();
        } else {
            // arc B through (s, 0, 0), around the origin, tangent along z
            p[0] = s * t.cos();
            p[2] = s * t.sin();
        }
        if rotate {
            rotate_onto_diagonal(p);
        }
    }
    PointSet::from_flat(d, coords)
}

fn rotate_onto_diagonal(p: &mut [f64]) {
    if p.len() == 2 {
        let (x, y) = (p[0], p[1]);
        let c = std::f64::consts::FRAC_1_SQRT_2;
        p[0] = c * (x - y);
        p[1] = c * (x + y);
        return;
    }
    // Columns: (1,1,1)/sqrt3, (1,-1,0)/sqrt2, (1,1,-2)/sqrt6; determinant +1.
    let (x, y, z) = (p[0], p[1], p[2]);
    let (a, b, c) = (1.0 / 3f64.sqrt(), 1.0 / 2f64.sqrt(), 1.0 / 6f64.sqrt());
    p[0] = a * x + b * y + c * z;
    p[1] = a * x - b * y + c * z;
    p[2] = a * x - 2.0 * c * z;
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(DiameterError::TooFewPoints { needed: min, got: n });
    }
    Ok(())
}

fn check_dim(d: usize, min: usize) -> Result<()> {
    if d < min {
        return Err(DiameterError::InvalidDimension { dim: d, min });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sphere,
    Arcs,
    Cube,
    Ellipse,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sphere => "sphere",
            Family::Arcs => "arcs",
            Family::Cube => "cube",
            Family::Ellipse => "ellipse",
        }
    }
}

impl FromStr for Family {
    type Err = DiameterError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere" => Ok(Family::Sphere),
            "arcs" => Ok(Family::Arcs),
            "cube" => Ok(Family::Cube),
            "ellipse" => Ok(Family::Ellipse),
            _ => Err(DiameterError::InvalidParameter(format!("unknown family `{s}`"))),
        }
    }
}

/// Full description of a synthetic input.
///
/// Textual form: `family:key=value:...` with keys `n`, `seed`, `d`,
/// `width`, `sep`, `rotate` (arcs) and `a`, `b` (ellipse), for example
/// `arcs:n=1000:seed=3:rotate=1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub seed: Option<u64>,
    pub dim: usize,
    pub arc_width: f64,
    pub separation: f64,
    pub rotate: bool,
    pub axes: (f64, f64),
}

impl GenSpec {
    pub fn new(family: Family, n: usize) -> Self {
        Self {
            family,
            n,
            seed: None,
            dim: 3,
            arc_width: DEFAULT_ARC_WIDTH,
            separation: DEFAULT_ARC_SEPARATION,
            rotate: true,
            axes: (2.0, 1.0),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_dim(mut self, dim: usize) -> Self {
        self.dim = dim;
        self
    }

    /// Generates the points; a missing seed is taken from `default_seed`.
    pub fn generate_with(&self, default_seed: u64) -> Result<PointSet> {
        let seed = self.seed.unwrap_or(default_seed);
        match self.family {
            Family::Sphere => gen_sphere_dim(self.n, self.dim, seed),
            Family::Cube => gen_cube(self.n, self.dim, seed),
            Family::Ellipse => gen_ellipse(self.n, self.axes.0, self.axes.1, self.dim),
            Family::Arcs => gen_arcs_dim(self.n, self.dim, seed, self.arc_width, self.separation, self.rotate),
        }
    }

    pub fn generate(&self) -> Result<PointSet> {
        self.generate_with(0)
    }
}

impl FromStr for GenSpec {
    type Err = DiameterError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let family: Family = parts.next().unwrap_or_default().parse()?;
        let mut spec = GenSpec::new(family, 0);
        let mut have_n = false;
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| DiameterError::InvalidParameter(format!("expected key=value, got `{part}`")))?;
            let bad = || DiameterError::InvalidParameter(format!("bad value for `{key}`: `{value}`"));
            match key {
                "n" => {
                    spec.n = value.parse().map_err(|_| bad())?;
                    have_n = true;
                }
                "seed" => spec.seed = Some(value.parse().map_err(|_| bad())?),
                "d" => spec.dim = value.parse().map_err(|_| bad())?,
                "width" => spec.arc_width = value.parse().map_err(|_| bad())?,
                "sep" => spec.separation = value.parse().map_err(|_| bad())?,
                "rotate" => {
                    spec.rotate = match value {
                        "1" | "true" | "yes" => true,
                        "0" | "false" | "no" => false,
                        _ => return Err(bad()),
                    }
                }
                "a" => spec.axes.0 = value.parse().map_err(|_| bad())?,
                "b" => spec.axes.1 = value.parse().map_err(|_| bad())?,
                _ => return Err(DiameterError::InvalidParameter(format!("unknown key `{key}`"))),
            }
        }
        if !have_n {
            return Err(DiameterError::InvalidParameter("missing `n=`".into()));
        }
        Ok(spec)
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:n={}", self.family.name(), self.n)?;
        if let Some(seed) = self.seed {
            write!(f, ":seed={seed}")?;
        }
        if self.dim != 3 {
            write!(f, ":d={}", self.dim)?;
        }
        match self.family {
            Family::Arcs => write!(f, ":width={}:sep={}:rotate={}", self.arc_width, self.separation, self.rotate as u8),
            Family::Ellipse => write!(f, ":a={}:b={}", self.axes.0, self.axes.1),
            _ => Ok(()),
        }
    }
}
