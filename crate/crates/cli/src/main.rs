//! `diam`: compute point-set diameters, generate inputs, run the benchmark
//! matrix and render SVG snapshots of the pair refinement.

mod bench;
mod error;
mod input;
mod snapshot;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diameter_core::generators::{GenSpec, RNG_ALGORITHM};
use diameter_core::io::{PointFormat, RecordFormat, ResultRecord, csv_header, write_result, write_xyz};
use diameter_core::{Algorithm, Strategy, TracedRun, approx_diameter_traced, fs_directions_traced};

use crate::bench::{BenchConfig, render_csv, render_json, render_markdown, run_bench};
use crate::error::CliError;
use crate::input::{LoadedInput, load_gen, load_one, load_path, parse_format, parse_gen};

#[derive(Parser)]
#[command(name = "diam", version, about = "Diameter of point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one input and print a result record.
    Compute(ComputeArgs),
    /// Run every (algorithm, eps) row on every input.
    Bench(BenchArgs),
    /// Write a generated point set as XYZ.
    Gen(GenArgs),
    /// Write SVG frames of the pair refinement.
    Snapshot(SnapshotArgs),
}

#[derive(Args)]
struct SeedArg {
    /// Seed for generated inputs whose spec has none.
    #[arg(long, env = "DIAM_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SingleInput {
    /// Point file (XYZ, OFF or ASCII PLY).
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// File format; guessed from the extension when omitted.
    #[arg(long, value_parser = parse_format)]
    format: Option<PointFormat>,
    /// Generated input, e.g. `sphere:n=1000:seed=7`.
    #[arg(long = "gen", value_name = "SPEC", value_parser = parse_gen)]
    gen_spec: Option<GenSpec>,
    #[command(flatten)]
    seed: SeedArg,
}

impl SingleInput {
    fn load(&self) -> Result<LoadedInput, CliError> {
        load_one(self.input.as_ref(), self.gen_spec.as_ref(), self.format, self.seed.seed)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Md,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: SingleInput,
    #[arg(long, value_parser = parse_algorithm)]
    algo: Algorithm,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,
    /// Attach the event log of the pair search (JSON output only).
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Point files; repeatable.
    #[arg(long = "in", value_name = "PATH")]
    inputs: Vec<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Option<PointFormat>,
    /// Generated inputs; repeatable.
    #[arg(long = "gen", value_name = "SPEC", value_parser = parse_gen)]
    gens: Vec<GenSpec>,
    #[command(flatten)]
    seed: SeedArg,
    /// Algorithms (comma separated or repeated); all when omitted.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    algo: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.01, 0.1])]
    eps: Vec<f64>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    repetitions: u32,
    /// Largest input validated against brute force.
    #[arg(long, default_value_t = 5000)]
    oracle_cutoff: usize,
    #[arg(long, value_enum, default_value_t = OutFormat::Md)]
    out: OutFormat,
    /// Run cells concurrently; wall times are then only indicative.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long = "gen", value_name = "SPEC", value_parser = parse_gen)]
    gen_spec: GenSpec,
    #[command(flatten)]
    seed: SeedArg,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Plane {
    Xy,
    Xz,
    Yz,
}

impl Plane {
    fn axes(self) -> (usize, usize) {
        match self {
            Plane::Xy => (0, 1),
            Plane::Xz => (0, 2),
            Plane::Yz => (1, 2),
        }
    }
}

#[derive(Args)]
struct SnapshotArgs {
    #[command(flatten)]
    input: SingleInput,
    /// One of fs-heap, fs-wspd, fs-levels, fs-directions.
    #[arg(long, value_parser = parse_algorithm, default_value = "fs-heap")]
    algo: Algorithm,
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    /// Trace events per frame.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    every: u64,
    #[arg(long, value_name = "DIR")]
    out_dir: PathBuf,
    /// Projection plane; required for 3D input.
    #[arg(long, value_enum)]
    plane: Option<Plane>,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse::<Algorithm>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Bench(args) => bench(args),
        Command::Gen(args) => generate(args),
        Command::Snapshot(args) => snapshot(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("diam: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn print(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::io("stdout", e))
}

fn traced(algo: Algorithm, input: &LoadedInput, eps: f64) -> Result<TracedRun, CliError> {
    let run = match algo {
        Algorithm::FsHeap => approx_diameter_traced(&input.points, eps, Strategy::Heap4Way),
        Algorithm::FsWspd => approx_diameter_traced(&input.points, eps, Strategy::HeapWspd),
        Algorithm::FsLevels => approx_diameter_traced(&input.points, eps, Strategy::FifoLevels),
        Algorithm::FsDirections => fs_directions_traced(&input.points, eps),
        other => return Err(CliError::usage(format!("{other} has no event trace"))),
    };
    Ok(run?)
}

fn compute(args: ComputeArgs) -> Result<(), CliError> {
    args.algo.check_eps(args.eps).map_err(|e| CliError::usage(e.to_string()))?;
    if args.trace && args.out != OutFormat::Json {
        return Err(CliError::usage("--trace needs --out json"));
    }
    let input = args.input.load()?;
    let (result, trace) = if args.trace {
        let run = traced(args.algo, &input, args.eps)?;
        (run.result, Some(run.trace))
    } else {
        (args.algo.run(&input.points, args.eps)?, None)
    };
    let mut rec = ResultRecord::new(args.algo.name(), args.eps, &input.label, &input.points, &result);
    rec.meta.seed = input.seed;
    rec.meta.rng = input.seed.map(|_| RNG_ALGORITHM.to_string());
    let text = match args.out {
        OutFormat::Json => match trace {
            None => write_result(&rec, RecordFormat::Json) + "\n",
            Some(trace) => {
                let mut value = serde_json::to_value(&rec).expect("records serialize");
                value["trace"] = serde_json::to_value(&trace.events).expect("events serialize");
                format!("{value}\n")
            }
        },
        OutFormat::Csv => format!("{}\n{}\n", csv_header(), write_result(&rec, RecordFormat::CsvRow)),
        OutFormat::Md => format!(
            "| algorithm | eps | n | d | distance | pair | evals | ms |\n|---|---:|---:|---:|---:|---|---:|---:|\n| {} | {} | {} | {} | {} | ({}, {}) | {} | {:.3} |\n",
            rec.algorithm,
            rec.eps,
            rec.meta.n,
            rec.meta.d,
            rec.distance,
            rec.i,
            rec.j,
            rec.stats.distance_evals,
            rec.stats.wall_ms
        ),
    };
    print(&text)
}

fn bench(args: BenchArgs) -> Result<(), CliError> {
    let mut inputs = Vec::new();
    for p in &args.inputs {
        inputs.push(load_path(p, args.format)?);
    }
    for g in &args.gens {
        inputs.push(load_gen(g, args.seed.seed)?);
    }
    let algorithms = if args.algo.is_empty() { Algorithm::ALL.to_vec() } else { args.algo };
    let report = run_bench(BenchConfig {
        inputs,
        algorithms,
        eps: args.eps,
        repetitions: args.repetitions as usize,
        oracle_cutoff: args.oracle_cutoff,
        parallel: args.parallel,
    })?;
    let text = match args.out {
        OutFormat::Csv => render_csv(&report),
        OutFormat::Md => render_markdown(&report),
        OutFormat::Json => render_json(&report) + "\n",
    };
    print(&text)
}

fn generate(args: GenArgs) -> Result<(), CliError> {
    let input = load_gen(&args.gen_spec, args.seed.seed)?;
    let text = format!("# {}\n{}", input.label, write_xyz(&input.points));
    match args.output {
        Some(path) => std::fs::write(&path, text).map_err(|e| CliError::io(path.display().to_string(), e)),
        None => print(&text),
    }
}

fn snapshot(args: SnapshotArgs) -> Result<(), CliError> {
    if !matches!(args.algo, Algorithm::FsHeap | Algorithm::FsWspd | Algorithm::FsLevels | Algorithm::FsDirections) {
        return Err(CliError::usage(format!("{} has no event trace", args.algo)));
    }
    args.algo.check_eps(args.eps).map_err(|e| CliError::usage(e.to_string()))?;
    let input = args.input.load()?;
    let axes = match (input.points.dim(), args.plane) {
        (2, None | Some(Plane::Xy)) => (0, 1),
        (3, Some(plane)) => plane.axes(),
        (3, None) => return Err(CliError::usage("3D input needs --plane xy|xz|yz")),
        (2, Some(_)) => return Err(CliError::usage("2D input only has the xy plane")),
        (d, _) => return Err(CliError::usage(format!("snapshots need 2D or 3D input, got d={d}"))),
    };
    let run = traced(args.algo, &input, args.eps)?;
    let frames = snapshot::render_frames(&input.points, &run, axes, args.every as usize);
    std::fs::create_dir_all(&args.out_dir).map_err(|e| CliError::io(args.out_dir.display().to_string(), e))?;
    for (k, frame) in frames.iter().enumerate() {
        let path = args.out_dir.join(format!("frame_{:05}.svg", k + 1));
        std::fs::write(&path, frame).map_err(|e| CliError::io(path.display().to_string(), e))?;
    }
    let summary = serde_json::json!({
        "frames": frames.len(),
        "events": run.trace.len(),
        "every": args.every,
        "distance": run.result.best_distance,
        "out_dir": args.out_dir.display().to_string(),
    });
    print(&format!("{summary}\n"))
}
