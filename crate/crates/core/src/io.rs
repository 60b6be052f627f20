//! Point-cloud readers (XYZ, OFF, ASCII PLY) and result records.
//!
//! Floating-point values written by this module use 17 significant digits
//! in scientific notation (`{:.16e}`), which reads back bit-exactly. JSON
//! output goes through `serde_json`, whose shortest round-trip formatting
//! is also lossless.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::DiameterError;
use crate::geometry::PointSet;
use crate::pair_diameter::DiameterResult;

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: expected {expected} coordinates, found {found}")]
    InconsistentDimension { line: usize, expected: usize, found: usize },

    #[error("unsupported format: {0}")]
    Unsupported(String),

    #[error("no points in input")]
    Empty,

    #[error(transparent)]
    Points(#[from] DiameterError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointFormat {
    Xyz,
    Off,
    Ply,
}

impl PointFormat {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "xyz" | "txt" | "pts" => Some(PointFormat::Xyz),
            "off" => Some(PointFormat::Off),
            "ply" => Some(PointFormat::Ply),
            _ => None,
        }
    }
}

impl FromStr for PointFormat {
    type Err = ReadError;

    fn from_str(s: &str) -> Result<Self, ReadError> {
        match s.to_ascii_lowercase().as_str() {
            "xyz" => Ok(PointFormat::Xyz),
            "off" => Ok(PointFormat::Off),
            "ply" => Ok(PointFormat::Ply),
            other => Err(ReadError::Unsupported(other.to_string())),
        }
    }
}

pub fn read_points(path: &Path, format: PointFormat) -> Result<PointSet, ReadError> {
    let bytes = std::fs::read(path).map_err(|source| ReadError::Io { path: path.display().to_string(), source })?;
    if format == PointFormat::Ply && is_binary_ply(&bytes) {
        return Err(ReadError::Unsupported("binary PLY".into()));
    }
    let text = String::from_utf8(bytes)
        .map_err(|e| ReadError::Malformed { line: 0, message: format!("not valid UTF-8 text: {e}") })?;
    parse_points(&text, format)
}

fn is_binary_ply(bytes: &[u8]) -> bool {
    let head = &bytes[..bytes.len().min(512)];
    let head = String::from_utf8_lossy(head);
    head.lines().any(|l| {
        let l = l.trim();
        l.starts_with("format") && l.contains("binary")
    })
}

pub fn parse_points(text: &str, format: PointFormat) -> Result<PointSet, ReadError> {
    match format {
        PointFormat::Xyz => parse_xyz(text),
        PointFormat::Off => parse_off(text),
        PointFormat::Ply => parse_ply(text),
    }
}

fn parse_reals<'a>(tokens: impl Iterator<Item = &'a str>, line: usize, out: &mut Vec<f64>) -> Result<usize, ReadError> {
    let mut count = 0;
    for tok in tokens {
        let v: f64 =
            tok.parse().map_err(|_| ReadError::Malformed { line, message: format!("`{tok}` is not a number") })?;
        if !v.is_finite() {
            return Err(ReadError::Malformed { line, message: format!("non-finite value `{tok}`") });
        }
        out.push(v);
        count += 1;
    }
    Ok(count)
}

/// One point per line; dimension taken from the first data line; blank
/// lines and lines starting with `#` are skipped.
pub fn parse_xyz(text: &str) -> Result<PointSet, ReadError> {
    let mut coords = Vec::new();
    let mut dim = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let found = parse_reals(line.split_whitespace(), k + 1, &mut coords)?;
        if dim == 0 {
            dim = found;
        } else if found != dim {
            return Err(ReadError::InconsistentDimension { line: k + 1, expected: dim, found });
        }
    }
    if dim == 0 {
        return Err(ReadError::Empty);
    }
    Ok(PointSet::from_flat(dim, coords)?)
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((k + 1, l))
    })
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ReadError> {
    let tok = tok.ok_or_else(|| ReadError::Malformed { line, message: format!("missing {what}") })?;
    tok.parse().map_err(|_| ReadError::Malformed { line, message: format!("bad {what} `{tok}`") })
}

/// Vertices of an OFF mesh; faces are ignored.
pub fn parse_off(text: &str) -> Result<PointSet, ReadError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(ReadError::Empty)?;
    let mut rest = header.split_whitespace();
    match rest.next() {
        Some("OFF") => {}
        Some(kw) if kw.ends_with("OFF") => {
            return Err(ReadError::Unsupported(format!("OFF variant `{kw}`")));
        }
        _ => return Err(ReadError::Malformed { line, message: "missing OFF header".into() }),
    }
    let mut counts: Vec<&str> = rest.collect();
    let mut count_line = line;
    if counts.is_empty() {
        let (l, text) = lines.next().ok_or(ReadError::Malformed { line, message: "missing vertex count".into() })?;
        count_line = l;
        counts = text.split_whitespace().collect();
    }
    let nv = parse_count(counts.first().copied(), count_line, "vertex count")?;
    let mut coords = Vec::with_capacity(3 * nv);
    for _ in 0..nv {
        let (l, text) = lines
            .next()
            .ok_or(ReadError::Malformed { line: count_line, message: format!("expected {nv} vertices") })?;
        let found = parse_reals(text.split_whitespace().take(3), l, &mut coords)?;
        if found != 3 {
            return Err(ReadError::InconsistentDimension { line: l, expected: 3, found });
        }
    }
    if nv == 0 {
        return Err(ReadError::Empty);
    }
    Ok(PointSet::from_flat(3, coords)?)
}

struct PlyElement {
    name: String,
    count: usize,
    properties: Vec<String>,
    has_list: bool,
}

/// `x`, `y`, `z` of the `vertex` element of an ASCII PLY file.
pub fn parse_ply(text: &str) -> Result<PointSet, ReadError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    match lines.next() {
        Some((_, "ply")) => {}
        other => {
            let line = other.map_or(1, |(l, _)| l);
            return Err(ReadError::Malformed { line, message: "missing `ply` magic".into() });
        }
    }
    let mut elements: Vec<PlyElement> = Vec::new();
    let mut saw_format = false;
    let mut header_end = None;
    for (line, l) in lines.by_ref() {
        let mut tok = l.split_whitespace();
        match tok.next() {
            Some("format") => {
                match tok.next() {
                    Some("ascii") => {}
                    Some(f) => return Err(ReadError::Unsupported(format!("PLY format `{f}`"))),
                    None => return Err(ReadError::Malformed { line, message: "empty format".into() }),
                }
                saw_format = true;
            }
            Some("element") => {
                let name = tok.next().unwrap_or_default().to_string();
                let count = parse_count(tok.next(), line, "element count")?;
                elements.push(PlyElement { name, count, properties: Vec::new(), has_list: false });
            }
            Some("property") => {
                let el = elements
                    .last_mut()
                    .ok_or_else(|| ReadError::Malformed { line, message: "property before element".into() })?;
                let parts: Vec<&str> = tok.collect();
                if parts.first() == Some(&"list") {
                    el.has_list = true;
                }
                el.properties.push(parts.last().copied().unwrap_or_default().to_string());
            }
            Some("end_header") => {
                header_end = Some(line);
                break;
            }
            Some("comment") | Some("obj_info") | None => {}
            Some(other) => {
                return Err(ReadError::Malformed { line, message: format!("unknown header line `{other}`") });
            }
        }
    }
    let header_end = header_end.ok_or(ReadError::Malformed { line: 1, message: "missing end_header".into() })?;
    if !saw_format {
        return Err(ReadError::Malformed { line: header_end, message: "missing format line".into() });
    }

    let mut data = lines.filter(|(_, l)| !l.is_empty());
    let mut coords = Vec::new();
    let mut found_vertex = false;
    for el in &elements {
        if el.name != "vertex" {
            for _ in 0..el.count {
                data.next().ok_or(ReadError::Malformed {
                    line: header_end,
                    message: format!("truncated `{}` data", el.name),
                })?;
            }
            continue;
        }
        found_vertex = true;
        if el.has_list {
            return Err(ReadError::Unsupported("list property in vertex element".into()));
        }
        let idx: Vec<usize> = ["x", "y", "z"]
            .iter()
            .map(|axis| {
                el.properties.iter().position(|p| p == axis).ok_or_else(|| ReadError::Malformed {
                    line: header_end,
                    message: format!("vertex element has no `{axis}` property"),
                })
            })
            .collect::<Result<_, _>>()?;
        coords.reserve(3 * el.count);
        for _ in 0..el.count {
            let (line, l) = data
                .next()
                .ok_or(ReadError::Malformed { line: header_end, message: format!("expected {} vertices", el.count) })?;
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != el.properties.len() {
                return Err(ReadError::InconsistentDimension {
                    line,
                    expected: el.properties.len(),
                    found: toks.len(),
                });
            }
            parse_reals(idx.iter().map(|&i| toks[i]), line, &mut coords)?;
        }
    }
    if !found_vertex || coords.is_empty() {
        return Err(ReadError::Empty);
    }
    Ok(PointSet::from_flat(3, coords)?)
}

/// Formats a real with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// One point per line, coordinates separated by single spaces.
pub fn write_xyz(points: &PointSet) -> String {
    let mut out = String::with_capacity(points.len() * points.dim() * 24);
    for p in points.iter() {
        for (k, c) in p.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(&fmt_real(*c));
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RecordStats {
    pub pairs_created: u64,
    pub distance_evals: u64,
    pub nodes_built: u64,
    pub heap_ops: u64,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub n: usize,
    pub d: usize,
    pub seed: Option<u64>,
    pub rng: Option<String>,
}

/// One algorithm run, as printed by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub algorithm: String,
    pub eps: f64,
    pub input: String,
    pub i: usize,
    pub j: usize,
    pub distance: f64,
    pub stats: RecordStats,
    pub meta: RecordMeta,
}

impl ResultRecord {
    pub fn new(algorithm: &str, eps: f64, input: &str, points: &PointSet, result: &DiameterResult) -> Self {
        let s = &result.stats;
        Self {
            algorithm: algorithm.to_string(),
            eps,
            input: input.to_string(),
            i: result.best_pair.0,
            j: result.best_pair.1,
            distance: result.best_distance,
            stats: RecordStats {
                pairs_created: s.pairs_created,
                distance_evals: s.distance_evaluations,
                nodes_built: s.nodes_built,
                heap_ops: s.heap_ops,
                wall_ms: s.wall_time.as_secs_f64() * 1e3,
            },
            meta: RecordMeta { n: points.len(), d: points.dim(), seed: None, rng: None },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordFormat {
    Json,
    CsvRow,
}

/// Column order of [`RecordFormat::CsvRow`].
pub const CSV_COLUMNS: [&str; 12] = [
    "algorithm",
    "eps",
    "n",
    "d",
    "distance",
    "i",
    "j",
    "pairs_created",
    "distance_evals",
    "nodes_built",
    "heap_ops",
    "wall_ms",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

pub fn write_result(record: &ResultRecord, format: RecordFormat) -> String {
    match format {
        RecordFormat::Json => serde_json::to_string(record).expect("records always serialize"),
        RecordFormat::CsvRow => {
            let r = record;
            let mut out = String::new();
            write!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                csv_field(&r.algorithm),
                fmt_real(r.eps),
                r.meta.n,
                r.meta.d,
                fmt_real(r.distance),
                r.i,
                r.j,
                r.stats.pairs_created,
                r.stats.distance_evals,
                r.stats.nodes_built,
                r.stats.heap_ops,
                fmt_real(r.stats.wall_ms),
            )
            .unwrap();
            out
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) { format!("\"{}\"", s.replace('"', "\"\"")) } else { s.to_string() }
}

pub fn parse_json_record(text: &str) -> Result<ResultRecord, serde_json::Error> {
    serde_json::from_str(text)
}

/// Parses a row written by [`write_result`] with [`RecordFormat::CsvRow`].
/// The CSV row carries no input descriptor, seed or generator name; those
/// come back empty.
pub fn parse_csv_row(row: &str) -> Result<ResultRecord, ReadError> {
    let fields: Vec<&str> = row.trim_end().split(',').collect();
    if fields.len() != CSV_COLUMNS.len() {
        return Err(ReadError::Malformed {
            line: 1,
            message: format!("expected {} fields, found {}", CSV_COLUMNS.len(), fields.len()),
        });
    }
    fn num<T: FromStr>(s: &str, col: &str) -> Result<T, ReadError> {
        s.parse().map_err(|_| ReadError::Malformed { line: 1, message: format!("bad {col} `{s}`") })
    }
    Ok(ResultRecord {
        algorithm: fields[0].to_string(),
        eps: num(fields[1], "eps")?,
        input: String::new(),
        i: num(fields[5], "i")?,
        j: num(fields[6], "j")?,
        distance: num(fields[4], "distance")?,
        stats: RecordStats {
            pairs_created: num(fields[7], "pairs_created")?,
            distance_evals: num(fields[8], "distance_evals")?,
            nodes_built: num(fields[9], "nodes_built")?,
            heap_ops: num(fields[10], "heap_ops")?,
            wall_ms: num(fields[11], "wall_ms")?,
        },
        meta: RecordMeta { n: num(fields[2], "n")?, d: num(fields[3], "d")?, seed: None, rng: None },
    })
}
