//! Every diameter algorithm of the crate behind one name.

use std::fmt;
use std::str::FromStr;

use crate::baselines::{
    Base2d, bbox_diameter, brute_force_diameter, chan_diameter, direction_search_diameter, grid_fs_directions_diameter,
    grid_levels_diameter, pca_diameter,
};
use crate::error::{DiameterError, Result};
use crate::geometry::PointSet;
use crate::pair_diameter::{DiameterResult, Strategy, approx_diameter, fs_directions_diameter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    FsHeap,
    FsWspd,
    FsLevels,
    FsDirections,
    Grid,
    GridFsDir,
    Chan,
    ChanMod,
    DirSearch,
    Bbox,
    Pca,
    Brute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 12] = [
        Algorithm::FsHeap,
        Algorithm::FsWspd,
        Algorithm::FsLevels,
        Algorithm::FsDirections,
        Algorithm::Grid,
        Algorithm::GridFsDir,
        Algorithm::Chan,
        Algorithm::ChanMod,
        Algorithm::DirSearch,
        Algorithm::Bbox,
        Algorithm::Pca,
        Algorithm::Brute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::FsHeap => "fs-heap",
            Algorithm::FsWspd => "fs-wspd",
            Algorithm::FsLevels => "fs-levels",
            Algorithm::FsDirections => "fs-directions",
            Algorithm::Grid => "grid",
            Algorithm::GridFsDir => "grid-fs-dir",
            Algorithm::Chan => "chan",
            Algorithm::ChanMod => "chan-mod",
            Algorithm::DirSearch => "dir-search",
            Algorithm::Bbox => "bbox",
            Algorithm::Pca => "pca",
            Algorithm::Brute => "brute",
        }
    }

    /// Whether the result depends on eps at all.
    pub fn uses_eps(self) -> bool {
        !matches!(self, Algorithm::Bbox | Algorithm::Pca | Algorithm::Brute)
    }

    /// Whether eps must be strictly positive.
    pub fn needs_positive_eps(self) -> bool {
        self.uses_eps() && !matches!(self, Algorithm::FsHeap | Algorithm::FsWspd | Algorithm::FsLevels)
    }

    /// Checks eps against this algorithm without running it.
    pub fn check_eps(self, eps: f64) -> Result<()> {
        if !self.uses_eps() {
            return Ok(());
        }
        if !eps.is_finite() || eps < 0.0 {
            return Err(DiameterError::InvalidEps { eps, reason: "must be finite and nonnegative" });
        }
        if self.needs_positive_eps() && eps == 0.0 {
            return Err(DiameterError::InvalidEps { eps, reason: "must be positive for this algorithm" });
        }
        Ok(())
    }

    /// Runs the algorithm; eps is ignored by the constant-factor and exact
    /// baselines.
    pub fn run(self, points: &PointSet, eps: f64) -> Result<DiameterResult> {
        self.check_eps(eps)?;
        match self {
            Algorithm::FsHeap => approx_diameter(points, eps, Strategy::Heap4Way),
            Algorithm::FsWspd => approx_diameter(points, eps, Strategy::HeapWspd),
            Algorithm::FsLevels => approx_diameter(points, eps, Strategy::FifoLevels),
            Algorithm::FsDirections => fs_directions_diameter(points, eps),
            Algorithm::Grid => grid_levels_diameter(points, eps),
            Algorithm::GridFsDir => grid_fs_directions_diameter(points, eps),
            Algorithm::Chan => chan_diameter(points, eps, Base2d::ConvexHullExact),
            Algorithm::ChanMod => chan_diameter(points, eps, Base2d::FsVariant),
            Algorithm::DirSearch => direction_search_diameter(points, eps, false),
            Algorithm::Bbox => bbox_diameter(points),
            Algorithm::Pca => pca_diameter(points),
            Algorithm::Brute => brute_force_diameter(points),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = DiameterError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| DiameterError::InvalidParameter(format!("unknown algorithm `{s}`")))
    }
}
