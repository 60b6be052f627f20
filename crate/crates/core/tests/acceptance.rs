//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! non-advisory criterion fails. Run with `cargo test --test acceptance`.

mod common;

use std::collections::{HashMap, HashSet};
use std::io::Write as _;
use std::time::{Duration, Instant};

use common::{Instance, instances};
use diameter_core::baselines::grid_snap;
use diameter_core::generators::{
    DEFAULT_ARC_SEPARATION, DEFAULT_ARC_WIDTH, RNG_ALGORITHM, gen_arcs, gen_cube, gen_sphere, gen_sphere_dim,
};
use diameter_core::io::{
    PointFormat, ReadError, RecordFormat, ResultRecord, parse_csv_row, parse_json_record, parse_points, parse_xyz,
    write_result, write_xyz,
};
use diameter_core::{
    Aabb, Algorithm, FairSplitTree, PointSet, Strategy, approx_diameter, approx_diameter_traced, fs_directions_traced,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INSTANCE_SEED: u64 = 0x5eed_0001;
const INSTANCE_COUNT: usize = 510;
const LOWER_SLACK: f64 = 1e-12;

enum Verdict {
    Pass(String),
    Fail(String),
    /// Advisory criterion outside its expected range.
    Warn(String),
}

type Check = fn(&[Instance]) -> Verdict;

fn main() {
    let start = Instant::now();
    let insts = instances(INSTANCE_COUNT, 500, INSTANCE_SEED);
    println!("acceptance: {} instances prepared in {:.1?}", insts.len(), start.elapsed());
    let checks: [(&str, Check); 10] = [
        ("exactness", exactness),
        ("approximation", approximation),
        ("constant factor", constant_factor),
        ("heap trace", heap_trace),
        ("adversarial arcs", adversarial_arcs),
        ("sphere scaling", sphere_scaling),
        ("pair growth", pair_growth),
        ("grid snapping", grid_snapping),
        ("tree invariants", tree_invariants),
        ("io round trip", io_round_trip),
    ];
    let mut failed = 0;
    for (k, (name, check)) in checks.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match check(&insts) {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Warn(d) => ("WARN", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {:<17} {tag}  {detail} [{:.1?}]", k + 1, name, t.elapsed());
        std::io::stdout().flush().ok();
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed in {:.1?}", start.elapsed());
}

fn verdict(errors: Vec<String>, ok: String) -> Verdict {
    match errors.first() {
        None => Verdict::Pass(ok),
        Some(first) => Verdict::Fail(format!("{} violations, first: {first}", errors.len())),
    }
}

fn exactness(insts: &[Instance]) -> Verdict {
    let start = Instant::now();
    let mut errors = Vec::new();
    for inst in insts {
        for s in Strategy::ALL {
            let d = approx_diameter(&inst.points, 0.0, s).unwrap().best_distance;
            if d != inst.oracle {
                errors.push(format!("{} {s:?}: {d} != {}", inst.label, inst.oracle));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        errors.push(format!("took {elapsed:.1?}, limit 60 s"));
    }
    verdict(errors, format!("{} instances x 3 strategies exact in {elapsed:.1?}", insts.len()))
}

fn approximation(insts: &[Instance]) -> Verdict {
    use Algorithm::*;
    let algos = [FsHeap, FsWspd, FsLevels, FsDirections, DirSearch, Grid, Chan, ChanMod];
    let mut errors = Vec::new();
    let mut runs = 0;
    for inst in insts {
        for eps in [0.01, 0.1] {
            for a in algos {
                runs += 1;
                let d = a.run(&inst.points, eps).unwrap().best_distance;
                if d > inst.oracle || d < (1.0 - eps) * inst.oracle * (1.0 - LOWER_SLACK) {
                    errors.push(format!("{} {a} eps={eps}: {d} vs oracle {}", inst.label, inst.oracle));
                }
            }
        }
    }
    verdict(errors, format!("{runs} runs within [(1-eps) oracle, oracle]"))
}

fn constant_factor(insts: &[Instance]) -> Verdict {
    let mut errors = Vec::new();
    let mut worst = f64::INFINITY;
    for inst in insts {
        let floor = inst.oracle / (inst.points.dim() as f64).sqrt();
        for a in [Algorithm::Bbox, Algorithm::Pca] {
            let d = a.run(&inst.points, 0.0).unwrap().best_distance;
            worst = worst.min(d / inst.oracle * (inst.points.dim() as f64).sqrt());
            if d > inst.oracle || d < floor {
                errors.push(format!("{} {a}: {d} vs oracle {}", inst.label, inst.oracle));
            }
        }
    }
    verdict(errors, format!("bbox and pca >= oracle/sqrt(d); smallest ratio to the bound {worst:.3}"))
}

fn heap_trace(insts: &[Instance]) -> Verdict {
    let mut errors = Vec::new();
    let mut events = 0;
    for (k, inst) in insts.iter().step_by(insts.len() / 50).take(50).enumerate() {
        let eps = [0.0, 0.05, 0.1][k % 3];
        let run = match k % 3 {
            0 => approx_diameter_traced(&inst.points, eps, Strategy::Heap4Way),
            1 => approx_diameter_traced(&inst.points, eps, Strategy::HeapWspd),
            _ => fs_directions_traced(&inst.points, eps),
        }
        .unwrap();
        events += run.trace.len();
        let handled = run.trace.handled_bounds();
        if let Some(w) = handled.windows(2).find(|w| w[1] > w[0]) {
            errors.push(format!("{}: handled bound rose {} -> {}", inst.label, w[0], w[1]));
        }
        let mut seen = HashSet::new();
        for (u, v) in run.trace.created_pairs() {
            if !seen.insert((u.min(v), u.max(v))) {
                errors.push(format!("{}: pair ({u}, {v}) created twice", inst.label));
                break;
            }
        }
        let est = run.trace.estimates();
        if let Some(w) = est.windows(2).find(|w| w[1] <= w[0]) {
            errors.push(format!("{}: estimate not increasing {} -> {}", inst.label, w[0], w[1]));
        }
    }
    verdict(errors, format!("50 traced runs, {events} events"))
}

fn adversarial_arcs(_: &[Instance]) -> Verdict {
    let n = 1000;
    let ps = gen_arcs(n, 7, DEFAULT_ARC_WIDTH, DEFAULT_ARC_SEPARATION, true).unwrap();
    let exact = approx_diameter(&ps, 0.0, Strategy::HeapWspd).unwrap().stats.distance_evaluations;
    let approx = approx_diameter(&ps, 0.1, Strategy::HeapWspd).unwrap().stats.distance_evaluations;
    let (lo, hi) = ((n * n / 8) as u64, (50 * n) as u64);
    let msg = format!("eps=0: {exact} evals (need >= {lo}); eps=0.1: {approx} evals (need <= {hi})");
    if exact >= lo && approx <= hi { Verdict::Pass(msg) } else { Verdict::Fail(msg) }
}

fn sphere_scaling(_: &[Instance]) -> Verdict {
    let start = Instant::now();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for n in [500usize, 1000, 2000, 4000] {
        for seed in 0..5 {
            let ps = gen_sphere(n, 100 + seed).unwrap();
            let evals = approx_diameter(&ps, 0.0, Strategy::HeapWspd).unwrap().stats.distance_evaluations;
            xs.push((n as f64).ln());
            ys.push((evals as f64).ln());
        }
    }
    let slope = least_squares_slope(&xs, &ys);
    let elapsed = start.elapsed();
    let msg = format!("fitted exponent {slope:.3} (need [1.2, 1.85]) in {elapsed:.1?}");
    if (1.2..=1.85).contains(&slope) && elapsed < Duration::from_secs(300) {
        Verdict::Pass(msg)
    } else {
        Verdict::Fail(msg)
    }
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn pair_growth(_: &[Instance]) -> Verdict {
    let ps = gen_sphere(2000, 3).unwrap();
    let created: Vec<u64> = [0.2, 0.1, 0.05]
        .iter()
        .map(|&eps| approx_diameter(&ps, eps, Strategy::HeapWspd).unwrap().stats.pairs_created)
        .collect();
    let ratios: Vec<f64> = created.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let msg = format!("pairs created {created:?}, growth per halving {ratios:.2?} (expect <= 16)");
    if ratios.iter().all(|&r| r <= 16.0) { Verdict::Pass(msg) } else { Verdict::Warn(msg) }
}

fn grid_snapping(_: &[Instance]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut errors = Vec::new();
    for k in 0..100 {
        let d = [2, 3][k % 2];
        let n = rng.random_range(50..=500);
        let seed: u64 = rng.random();
        let ps = if k % 4 < 2 { gen_cube(n, d, seed) } else { gen_sphere_dim(n, d, seed) }.unwrap();
        let eps = [0.05, 0.1, 0.2][k % 3];
        let oracle = common::oracle(&ps);
        let snapped = grid_snap(&ps, eps).unwrap();
        let got = if snapped.points.len() < 2 { 0.0 } else { common::oracle(&snapped.points) };
        let label = format!("set {k} (n={n}, d={d}, eps={eps})");
        if got < (1.0 - eps) * oracle || got > (1.0 + eps) * oracle {
            errors.push(format!("{label}: snapped diameter {got} vs {oracle}"));
        }
        if snapped.points.len() > snapped.snapped_len || snapped.snapped_len > ps.len() {
            errors.push(format!("{label}: sizes {} > {}", snapped.points.len(), snapped.snapped_len));
        }
        for axis in 0..d {
            let mut lines: HashMap<Vec<usize>, usize> = HashMap::new();
            for cell in &snapped.cells {
                let mut key = cell.clone();
                key.remove(axis);
                *lines.entry(key).or_default() += 1;
            }
            if lines.values().any(|&c| c > 2) {
                errors.push(format!("{label}: an axis-{axis} line keeps more than 2 cells"));
            }
        }
    }
    verdict(errors, "100 sets: diameter within 1 +- eps, at most 2 cells per grid line".into())
}

fn tree_invariants(_: &[Instance]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut errors = Vec::new();
    let mut paths = 0;
    for k in 0..100 {
        let d = [2, 3, 5][k % 3];
        let n = rng.random_range(1..=400);
        let seed: u64 = rng.random();
        let ps = match k % 4 {
            0 => gen_cube(n, d, seed),
            1 => gen_sphere_dim(n, d, seed),
            2 => gen_arcs(2 * n.max(1), seed, 0.3, 1.0, true),
            _ => {
                // heavy duplication
                let base = gen_cube(n.div_ceil(5), d, seed).unwrap();
                let rows: Vec<Vec<f64>> = (0..n).map(|i| base.point(i % base.len()).to_vec()).collect();
                PointSet::from_rows(&rows)
            }
        }
        .unwrap();
        let label = format!("set {k} (n={}, d={})", ps.len(), ps.dim());
        let tree = FairSplitTree::build_full(&ps).unwrap();
        if tree.node_count() > 2 * ps.len() - 1 {
            errors.push(format!("{label}: {} nodes", tree.node_count()));
        }
        for (id, node) in tree.nodes() {
            let tight = Aabb::around(node.range.clone().map(|p| tree.point(p))).unwrap();
            if tight != node.bbox {
                errors.push(format!("{label}: node {id} box not tight"));
            }
            if let Some((l, r)) = node.children {
                let (l, r) = (tree.node(l), tree.node(r));
                if l.is_empty() || r.is_empty() {
                    errors.push(format!("{label}: node {id} has an empty child"));
                }
                if !node.bbox.contains_box(&l.bbox) || !node.bbox.contains_box(&r.bbox) {
                    errors.push(format!("{label}: node {id} child box escapes"));
                }
            }
        }
        for _ in 0..10 {
            paths += 1;
            let mut lmax = vec![tree.node(tree.root()).lmax];
            let mut id = tree.root();
            while let Some((l, r)) = tree.node(id).children {
                id = if rng.random::<bool>() { l } else { r };
                lmax.push(tree.node(id).lmax);
            }
            for t in 0..lmax.len().saturating_sub(d) {
                if lmax[t + d] > lmax[t] / 2.0 + 1e-12 {
                    errors.push(format!("{label}: lmax {} at depth {} after {}", lmax[t + d], t + d, lmax[t]));
                }
            }
        }
    }
    verdict(errors, format!("100 full trees, {paths} root paths"))
}

fn io_round_trip(insts: &[Instance]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut errors = Vec::new();
    for k in 0..100 {
        let ps = if k % 2 == 0 {
            insts[k * 5].points.clone()
        } else {
            // arbitrary finite doubles, including subnormals and huge values
            let d = rng.random_range(1..=6);
            let n = rng.random_range(1..=50);
            let coords: Vec<f64> =
                std::iter::repeat_with(|| f64::from_bits(rng.random())).filter(|x| x.is_finite()).take(n * d).collect();
            PointSet::from_flat(d, coords).unwrap()
        };
        let back = parse_xyz(&write_xyz(&ps)).unwrap();
        let same = back.dim() == ps.dim()
            && back.coords().len() == ps.coords().len()
            && back.coords().iter().zip(ps.coords()).all(|(a, b)| a.to_bits() == b.to_bits());
        if !same {
            errors.push(format!("set {k}: XYZ round trip changed coordinates"));
        }
    }

    type Expect = fn(&ReadError) -> bool;
    let malformed: [(&str, PointFormat, Expect); 8] = [
        ("0 0 0\n1 x 1\n", PointFormat::Xyz, |e| matches!(e, ReadError::Malformed { line: 2, .. })),
        ("0 0 0\n1 1\n", PointFormat::Xyz, |e| matches!(e, ReadError::InconsistentDimension { line: 2, .. })),
        ("# only a comment\n", PointFormat::Xyz, |e| matches!(e, ReadError::Empty)),
        ("1 inf 2\n", PointFormat::Xyz, |e| matches!(e, ReadError::Malformed { line: 1, .. })),
        ("OFF\n3 1 0\n0 0 0\n", PointFormat::Off, |e| matches!(e, ReadError::Malformed { .. })),
        ("COFF\n1 0 0\n0 0 0 1 1 1 1\n", PointFormat::Off, |e| matches!(e, ReadError::Unsupported(_))),
        ("ply\nformat binary_little_endian 1.0\nelement vertex 1\nend_header\n", PointFormat::Ply, |e| {
            matches!(e, ReadError::Unsupported(_))
        }),
        (
            "ply\nformat ascii 1.0\nelement vertex 2\nproperty float x\nproperty float y\nend_header\n0 0\n",
            PointFormat::Ply,
            |e| matches!(e, ReadError::Malformed { .. }),
        ),
    ];
    for (text, format, expected) in malformed {
        match parse_points(text, format) {
            Err(e) if expected(&e) => {}
            other => errors.push(format!("{format:?} input {text:?}: got {other:?}")),
        }
    }

    let mut records = 0;
    for inst in insts.iter().take(40) {
        for a in [Algorithm::FsWspd, Algorithm::Bbox, Algorithm::Grid] {
            let r = a.run(&inst.points, 0.1).unwrap();
            let mut rec = ResultRecord::new(a.name(), 0.1, &inst.label, &inst.points, &r);
            rec.meta.seed = Some(INSTANCE_SEED);
            rec.meta.rng = Some(RNG_ALGORITHM.to_string());
            records += 1;
            if parse_json_record(&write_result(&rec, RecordFormat::Json)).ok().as_ref() != Some(&rec) {
                errors.push(format!("{}: JSON record did not round-trip", inst.label));
            }
            let mut flat = rec.clone();
            flat.input.clear();
            flat.meta.seed = None;
            flat.meta.rng = None;
            match parse_csv_row(&write_result(&rec, RecordFormat::CsvRow)) {
                Ok(back) if back == flat && back.distance.to_bits() == rec.distance.to_bits() => {}
                other => errors.push(format!("{}: CSV row did not round-trip: {other:?}", inst.label)),
            }
        }
    }
    verdict(errors, format!("100 XYZ sets bit-exact, 8 malformed inputs rejected, {records} records round-trip"))
}
