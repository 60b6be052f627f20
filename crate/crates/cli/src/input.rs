use std::path::{Path, PathBuf};

use diameter_core::PointSet;
use diameter_core::generators::GenSpec;
use diameter_core::io::{PointFormat, read_points};

use crate::error::CliError;

/// A point set with a printable descriptor and the seed that produced it.
#[derive(Clone, Debug)]
pub struct LoadedInput {
    pub label: String,
    pub points: PointSet,
    pub seed: Option<u64>,
}

pub fn parse_format(s: &str) -> Result<PointFormat, String> {
    s.parse::<PointFormat>().map_err(|e| e.to_string())
}

pub fn parse_gen(s: &str) -> Result<GenSpec, String> {
    s.parse::<GenSpec>().map_err(|e| e.to_string())
}

pub fn load_path(path: &Path, format: Option<PointFormat>) -> Result<LoadedInput, CliError> {
    let format = format
        .or_else(|| PointFormat::from_path(path))
        .ok_or_else(|| CliError::usage(format!("cannot tell the format of {}; pass --format", path.display())))?;
    let points = read_points(path, format)?;
    Ok(LoadedInput { label: path.display().to_string(), points, seed: None })
}

pub fn load_gen(spec: &GenSpec, default_seed: u64) -> Result<LoadedInput, CliError> {
    let seed = spec.seed.unwrap_or(default_seed);
    let spec = spec.clone().with_seed(seed);
    let points = spec.generate()?;
    Ok(LoadedInput { label: spec.to_string(), points, seed: Some(seed) })
}

/// Exactly one of `--in` and `--gen`.
pub fn load_one(
    path: Option<&PathBuf>,
    gen_spec: Option<&GenSpec>,
    format: Option<PointFormat>,
    seed: u64,
) -> Result<LoadedInput, CliError> {
    match (path, gen_spec) {
        (Some(p), None) => load_path(p, format),
        (None, Some(g)) => load_gen(g, seed),
        _ => Err(CliError::usage("give exactly one of --in PATH or --gen SPEC")),
    }
}
