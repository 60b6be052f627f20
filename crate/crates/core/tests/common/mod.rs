#![allow(dead_code)]

use diameter_core::PointSet;
use diameter_core::generators::{
    DEFAULT_ARC_SEPARATION, DEFAULT_ARC_WIDTH, gen_arcs_dim, gen_cube, gen_ellipse, gen_sphere_dim,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A generated test input with its exact diameter.
pub struct Instance {
    pub label: String,
    pub points: PointSet,
    pub oracle: f64,
}

/// Largest pairwise distance by plain double loop.
pub fn oracle(ps: &PointSet) -> f64 {
    let mut best = 0.0_f64;
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            best = best.max(ps.dist(i, j));
        }
    }
    best
}

const FAMILIES: [&str; 4] = ["cube", "sphere", "ellipse", "arcs"];
const DIMS: [usize; 3] = [2, 3, 5];

/// `count` instances cycling through dimensions {2, 3, 5} and the four
/// families, with n drawn from [2, max_n].
pub fn instances(count: usize, max_n: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let d = DIMS[k % 3];
            let family = FAMILIES[(k / 3) % 4];
            let n = rng.random_range(2..=max_n);
            let s: u64 = rng.random();
            let points = match family {
                "cube" => gen_cube(n, d, s),
                "sphere" => gen_sphere_dim(n, d, s),
                "ellipse" => {
                    let a = rng.random_range(1.0..4.0);
                    let b = rng.random_range(0.2..1.0);
                    gen_ellipse(n.max(3), a, b, d)
                }
                _ => {
                    let width = if k % 2 == 0 { DEFAULT_ARC_WIDTH } else { rng.random_range(0.01..1.0) };
                    gen_arcs_dim(n + n % 2, d, s, width, DEFAULT_ARC_SEPARATION, true)
                }
            }
            .expect("valid generator parameters");
            let oracle = oracle(&points);
            Instance { label: format!("#{k} {family} n={} d={d}", points.len()), points, oracle }
        })
        .collect()
}
