//! Diameter of point sets in arbitrary dimension.
//!
//! The central piece is a lazily constructed fair-split tree whose node
//! pairs are refined until every surviving pair is provably too short to
//! improve the current estimate by more than a `1 + eps` factor. With
//! `eps == 0` the result is the exact diameter. Classic approximators
//! (bounding box, PCA, grid cleaning, direction search and the recursive
//! hyperplane projection) live in [`baselines`] for comparison.

pub mod algorithm;
pub mod baselines;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod pair_diameter;
pub mod tree;

pub use algorithm::Algorithm;
pub use error::{DiameterError, Result};
pub use geometry::{Aabb, PointSet, distance};
pub use pair_diameter::{
    DiameterResult, RunStats, RunTrace, Strategy, TraceEvent, TracedRun, approx_diameter, approx_diameter_traced,
    fs_directions_diameter, fs_directions_traced,
};
pub use tree::{FairSplitTree, NodeId};
