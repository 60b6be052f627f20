//! Lazily refined fair-split tree.
//!
//! Nodes are split on demand at the midpoint of the longest edge of their
//! tight bounding box. Splitting reorders the node's slice of the point
//! array in place, so every node owns one contiguous range of positions.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{DiameterError, Result};
use crate::geometry::{Aabb, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    /// Tight box over the node's points.
    pub bbox: Aabb,
    pub center: Vec<f64>,
    pub radius: f64,
    /// Length of the longest box edge; zero iff all points coincide.
    pub lmax: f64,
    pub lmax_axis: usize,
    /// Positions (not original indices) of the node's points in the tree's
    /// reordered point array.
    pub range: Range<usize>,
    pub children: Option<(NodeId, NodeId)>,
    pub parent: Option<NodeId>,
    pub depth: u32,
}

impl Node {
    #[inline]
    pub fn len(&self) -> usize {
        self.range.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.range.is_empty()
    }

    /// A node whose points are all coordinate-identical (including single
    /// points). It has a zero-size box and is never split.
    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.lmax == 0.0
    }
}

#[derive(Clone, Debug)]
pub struct FairSplitTree {
    dim: usize,
    coords: Vec<f64>,
    /// `perm[pos]` is the original index of the point stored at `pos`.
    perm: Vec<usize>,
    nodes: Vec<Node>,
}

impl FairSplitTree {
    /// One-node tree over all points.
    ///
    /// The points attaining the minimum and maximum coordinate along the
    /// root's longest axis are moved to the first and last positions, so the
    /// root's first/last pair realizes at least the longest root edge.
    pub fn build_root(points: &PointSet) -> Result<Self> {
        if points.is_empty() {
            return Err(DiameterError::EmptyInput);
        }
        let n = points.len();
        let mut tree = Self {
            dim: points.dim(),
            coords: points.coords().to_vec(),
            perm: (0..n).collect(),
            nodes: Vec::with_capacity(2 * n.min(1 << 20)),
        };
        let root = tree.make_node(0..n, None, 0);
        let axis = root.lmax_axis;
        let (mut lo, mut hi) = (0, 0);
        for pos in 1..n {
            let c = tree.point(pos)[axis];
            if c < tree.point(lo)[axis] {
                lo = pos;
            }
            if c > tree.point(hi)[axis] {
                hi = pos;
            }
        }
        tree.swap(0, lo);
        // `hi` may have been moved by the first swap.
        let hi = if hi == 0 { lo } else { hi };
        tree.swap(n - 1, hi);
        tree.nodes.push(root);
        Ok(tree)
    }

    /// Builds the root and splits every splittable node.
    pub fn build_full(points: &PointSet) -> Result<Self> {
        let mut tree = Self::build_root(points)?;
        let mut stack = vec![tree.root()];
        while let Some(id) = stack.pop() {
            if !tree.node(id).is_degenerate() {
                let (l, r) = tree.split_node(id)?;
                stack.push(l);
                stack.push(r);
            }
        }
        Ok(tree)
    }

    #[inline]
    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of nodes built so far.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn num_points(&self) -> usize {
        self.perm.len()
    }

    #[inline]
    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> {
        self.nodes.iter().enumerate().map(|(i, n)| (NodeId(i as u32), n))
    }

    /// Coordinates stored at position `pos`.
    #[inline]
    pub fn point(&self, pos: usize) -> &[f64] {
        &self.coords[pos * self.dim..(pos + 1) * self.dim]
    }

    /// Original index of the point stored at position `pos`.
    #[inline]
    pub fn original_index(&self, pos: usize) -> usize {
        self.perm[pos]
    }

    /// Original indices of the points under `id`.
    pub fn point_indices(&self, id: NodeId) -> &[usize] {
        &self.perm[self.node(id).range.clone()]
    }

    /// Splits `id` at the midpoint of its longest edge. Points whose
    /// coordinate is below the midpoint go left, the rest go right.
    /// Splitting an already split node returns the existing children.
    pub fn split_node(&mut self, id: NodeId) -> Result<(NodeId, NodeId)> {
        let node = &self.nodes[id.index()];
        if let Some(children) = node.children {
            return Ok(children);
        }
        if node.is_degenerate() {
            return Err(DiameterError::DegenerateLeaf(id.index()));
        }
        let axis = node.lmax_axis;
        let (lo, hi) = (node.bbox.lo[axis], node.bbox.hi[axis]);
        let mut mid = 0.5 * (lo + hi);
        if mid <= lo {
            // lo and hi are adjacent floats; any cut in (lo, hi] separates them
            mid = hi;
        }
        let range = node.range.clone();
        let depth = node.depth + 1;

        // Hoare-style partition of the range by the cut coordinate.
        let (mut i, mut j) = (range.start, range.end);
        while i < j {
            if self.coords[i * self.dim + axis] < mid {
                i += 1;
            } else {
                j -= 1;
                self.swap(i, j);
            }
        }
        debug_assert!(i > range.start && i < range.end);

        let left = self.make_node(range.start..i, Some(id), depth);
        let right = self.make_node(i..range.end, Some(id), depth);
        let l = NodeId(self.nodes.len() as u32);
        let r = NodeId(l.0 + 1);
        self.nodes.push(left);
        self.nodes.push(right);
        self.nodes[id.index()].children = Some((l, r));
        Ok((l, r))
    }

    fn make_node(&self, range: Range<usize>, parent: Option<NodeId>, depth: u32) -> Node {
        let bbox = Aabb::around(range.clone().map(|p| self.point(p))).expect("node ranges are nonempty");
        let (center, radius) = bbox.center_and_radius();
        let (lmax_axis, lmax) = bbox.longest_edge();
        Node { bbox, center, radius, lmax, lmax_axis, range, children: None, parent, depth }
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.perm.swap(a, b);
        for k in 0..self.dim {
            self.coords.swap(a * self.dim + k, b * self.dim + k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{bounding_box, distance};
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_set(seed: u64, n: usize, d: usize) -> PointSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..n * d).map(|_| rng.random_range(0.0..1.0)).collect();
        PointSet::from_flat(d, coords).unwrap()
    }

    #[test]
    fn root_of_unit_square() {
        let ps = PointSet::from_rows(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]).unwrap();
        let tree = FairSplitTree::build_root(&ps).unwrap();
        let root = tree.node(tree.root());
        assert_eq!(tree.node_count(), 1);
        assert_eq!(root.bbox, Aabb::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap());
        assert!((root.radius - 2f64.sqrt() / 2.0).abs() < 1e-15);
        let mut idx = tree.point_indices(tree.root()).to_vec();
        idx.sort();
        assert_eq!(idx, vec![0, 1, 2, 3]);
    }

    #[test]
    fn root_ends_hold_axis_extremes() {
        let ps = random_set(11, 50, 3);
        let tree = FairSplitTree::build_root(&ps).unwrap();
        let root = tree.node(tree.root());
        let axis = root.lmax_axis;
        assert_eq!(tree.point(0)[axis], root.bbox.lo[axis]);
        assert_eq!(tree.point(49)[axis], root.bbox.hi[axis]);
        assert!(distance(tree.point(0), tree.point(49)) >= root.lmax);
    }

    #[test]
    fn singleton_and_empty_roots() {
        let ps = PointSet::from_rows(&[[2.0, 3.0]]).unwrap();
        let tree = FairSplitTree::build_root(&ps).unwrap();
        assert_eq!(tree.node(tree.root()).radius, 0.0);
        assert!(tree.node(tree.root()).is_degenerate());
        let empty = PointSet::from_flat(2, vec![]).unwrap();
        assert!(matches!(FairSplitTree::build_root(&empty), Err(DiameterError::EmptyInput)));
    }

    #[test]
    fn split_example() {
        let ps = PointSet::from_rows(&[[0.0, 0.0], [0.4, 0.0], [1.0, 0.0]]).unwrap();
        let mut tree = FairSplitTree::build_root(&ps).unwrap();
        let (l, r) = tree.split_node(tree.root()).unwrap();
        let mut left = tree.point_indices(l).to_vec();
        left.sort();
        assert_eq!(left, vec![0, 1]);
        assert_eq!(tree.point_indices(r), &[2]);
        assert_eq!(tree.node(l).bbox, Aabb::new(vec![0.0, 0.0], vec![0.4, 0.0]).unwrap());
        // idempotent
        assert_eq!(tree.split_node(tree.root()).unwrap(), (l, r));
        assert_eq!(tree.node_count(), 3);
    }

    #[test]
    fn midpoint_goes_right() {
        let ps = PointSet::from_rows(&[[0.0], [0.5], [1.0]]).unwrap();
        let mut tree = FairSplitTree::build_root(&ps).unwrap();
        let (_, r) = tree.split_node(tree.root()).unwrap();
        let mut right = tree.point_indices(r).to_vec();
        right.sort();
        assert_eq!(right, vec![1, 2]);
    }

    #[test]
    fn identical_points_are_a_degenerate_leaf() {
        let ps = PointSet::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let mut tree = FairSplitTree::build_root(&ps).unwrap();
        assert_eq!(tree.split_node(tree.root()), Err(DiameterError::DegenerateLeaf(0)));
    }

    #[test]
    fn adjacent_floats_still_split() {
        let a = 1.0_f64;
        let b = f64::from_bits(a.to_bits() + 1);
        let ps = PointSet::from_rows(&[[a], [b], [a]]).unwrap();
        let mut tree = FairSplitTree::build_root(&ps).unwrap();
        let (l, r) = tree.split_node(tree.root()).unwrap();
        assert_eq!(tree.node(l).len(), 2);
        assert_eq!(tree.node(r).len(), 1);
    }

    #[test]
    fn random_splits_partition_tightly() {
        for seed in 0..20 {
            let ps = random_set(seed, 64, 3);
            let tree = FairSplitTree::build_full(&ps).unwrap();
            for (_, node) in tree.nodes() {
                let Some((l, r)) = node.children else { continue };
                let (l, r) = (tree.node(l), tree.node(r));
                assert!(!l.is_empty() && !r.is_empty());
                assert_eq!(l.range.start, node.range.start);
                assert_eq!(l.range.end, r.range.start);
                assert_eq!(r.range.end, node.range.end);
                for child in [l, r] {
                    let pts =
                        PointSet::from_flat(3, child.range.clone().flat_map(|p| tree.point(p).to_vec()).collect())
                            .unwrap();
                    assert_eq!(child.bbox, bounding_box(&pts).unwrap());
                    assert!(node.bbox.contains_box(&child.bbox));
                    assert!(child.lmax <= node.lmax);
                }
            }
        }
    }
}
