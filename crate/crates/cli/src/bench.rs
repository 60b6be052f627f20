//! The benchmark matrix: rows are (algorithm, eps), columns are inputs.

use std::fmt::Write as _;
use std::sync::Mutex;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use diameter_core::baselines::brute_force_diameter;
use diameter_core::io::{CSV_COLUMNS, RecordFormat, ResultRecord, fmt_real, write_result};
use diameter_core::{Algorithm, DiameterResult};
use serde::Serialize;

use crate::error::CliError;
use crate::input::LoadedInput;

/// Relative slack on lower approximation bounds.
const LOWER_SLACK: f64 = 1e-12;

pub struct BenchConfig {
    pub inputs: Vec<LoadedInput>,
    pub algorithms: Vec<Algorithm>,
    pub eps: Vec<f64>,
    pub repetitions: usize,
    pub oracle_cutoff: usize,
    /// Run cells on all cores; wall times are then only indicative.
    pub parallel: bool,
}

/// One table row. `eps` is `None` for algorithms that take no eps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Row {
    pub algorithm: Algorithm,
    pub eps: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Check {
    Ok,
    /// Input larger than the oracle cutoff.
    Skipped,
    Violation(String),
}

#[derive(Clone, Debug)]
pub struct CellRun {
    /// Result of the last repetition.
    pub result: DiameterResult,
    pub median: Duration,
    pub check: Check,
}

pub struct CellOutcome {
    pub row: Row,
    pub input: usize,
    pub run: Result<CellRun, String>,
}

pub struct BenchReport {
    pub rows: Vec<Row>,
    pub inputs: Vec<LoadedInput>,
    pub oracles: Vec<Option<f64>>,
    /// Row-major: `cells[row * inputs.len() + input]`.
    pub cells: Vec<CellOutcome>,
}

/// Rows grouped by eps in increasing order (brute force joins the eps = 0
/// group), followed by the algorithms that take no eps.
pub fn plan_rows(algorithms: &[Algorithm], eps: &[f64]) -> Result<Vec<Row>, CliError> {
    if let Some(bad) = eps.iter().find(|e| !(e.is_finite() && **e >= 0.0)) {
        return Err(CliError::usage(format!("eps must be finite and nonnegative, got {bad}")));
    }
    let mut eps = eps.to_vec();
    eps.sort_by(f64::total_cmp);
    eps.dedup();
    let selected = |a: Algorithm| algorithms.contains(&a);
    let mut rows = Vec::new();
    for &e in &eps {
        for a in Algorithm::ALL.into_iter().filter(|&a| selected(a) && a.uses_eps()) {
            if a.check_eps(e).is_ok() {
                rows.push(Row { algorithm: a, eps: Some(e) });
            }
        }
        if e == 0.0 && selected(Algorithm::Brute) {
            rows.push(Row { algorithm: Algorithm::Brute, eps: Some(0.0) });
        }
    }
    let brute_placed = rows.iter().any(|r| r.algorithm == Algorithm::Brute);
    for a in Algorithm::ALL.into_iter().filter(|&a| selected(a) && !a.uses_eps()) {
        if !(a == Algorithm::Brute && brute_placed) {
            rows.push(Row { algorithm: a, eps: None });
        }
    }
    if rows.is_empty() {
        return Err(CliError::usage("no (algorithm, eps) combination to run"));
    }
    Ok(rows)
}

pub fn run_bench(config: BenchConfig) -> Result<BenchReport, CliError> {
    if config.inputs.is_empty() {
        return Err(CliError::usage("bench needs at least one --in or --gen"));
    }
    if config.repetitions == 0 {
        return Err(CliError::usage("--repetitions must be at least 1"));
    }
    let rows = plan_rows(&config.algorithms, &config.eps)?;
    let oracles: Vec<Option<f64>> = config
        .inputs
        .iter()
        .map(|inp| {
            let n = inp.points.len();
            (n >= 2 && n <= config.oracle_cutoff)
                .then(|| brute_force_diameter(&inp.points).ok().map(|r| r.best_distance))
                .flatten()
        })
        .collect();

    let cols = config.inputs.len();
    let total = rows.len() * cols;
    let run_cell = |k: usize| {
        let (row, input) = (rows[k / cols], k % cols);
        let run = run_cell(row, &config.inputs[input], oracles[input], config.repetitions);
        CellOutcome { row, input, run }
    };
    let cells: Vec<CellOutcome> = if config.parallel {
        let slots: Vec<Mutex<Option<CellOutcome>>> = (0..total).map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(total.max(1));
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| {
                    loop {
                        let k = next.fetch_add(1, Ordering::Relaxed);
                        if k >= total {
                            break;
                        }
                        *slots[k].lock().unwrap() = Some(run_cell(k));
                    }
                });
            }
        });
        slots.into_iter().map(|m| m.into_inner().unwrap().expect("every cell ran")).collect()
    } else {
        (0..total).map(run_cell).collect()
    };
    Ok(BenchReport { rows, inputs: config.inputs, oracles, cells })
}

fn run_cell(row: Row, input: &LoadedInput, oracle: Option<f64>, reps: usize) -> Result<CellRun, String> {
    let eps = row.eps.unwrap_or(0.0);
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let r = row.algorithm.run(&input.points, eps).map_err(|e| e.to_string())?;
        times.push(r.stats.wall_time);
        last = Some(r);
    }
    times.sort();
    let result = last.expect("at least one repetition");
    let check = match oracle {
        None => Check::Skipped,
        Some(o) => validate(row, input.points.dim(), result.best_distance, o),
    };
    Ok(CellRun { result, median: times[(times.len() - 1) / 2], check })
}

/// Checks a distance against the guarantee of its row.
pub fn validate(row: Row, dim: usize, d: f64, oracle: f64) -> Check {
    let floor = match row.eps {
        _ if row.algorithm == Algorithm::Brute => oracle,
        Some(0.0) => oracle,
        Some(e) => (1.0 - e) * oracle * (1.0 - LOWER_SLACK),
        None => oracle / (dim as f64).sqrt() * (1.0 - LOWER_SLACK),
    };
    if d > oracle {
        Check::Violation(format!("{d} exceeds the diameter {oracle}"))
    } else if d < floor {
        Check::Violation(format!("{d} below the guaranteed {floor} (diameter {oracle})"))
    } else {
        Check::Ok
    }
}

impl Check {
    fn label(&self) -> String {
        match self {
            Check::Ok => "ok".into(),
            Check::Skipped => "skipped".into(),
            Check::Violation(m) => format!("violation: {m}"),
        }
    }
}

fn eps_label(eps: Option<f64>) -> String {
    eps.map_or_else(|| "-".to_string(), |e| e.to_string())
}

fn record(report: &BenchReport, cell: &CellOutcome, run: &CellRun) -> ResultRecord {
    let input = &report.inputs[cell.input];
    let mut rec = ResultRecord::new(
        cell.row.algorithm.name(),
        cell.row.eps.unwrap_or(0.0),
        &input.label,
        &input.points,
        &run.result,
    );
    rec.stats.wall_ms = run.median.as_secs_f64() * 1e3;
    rec.meta.seed = input.seed;
    rec
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) { format!("\"{}\"", s.replace('"', "\"\"")) } else { s.to_string() }
}

/// Long format: one line per cell. The first columns are the record
/// columns; `eps` is empty for algorithms without eps and `wall_ms` is the
/// median over repetitions.
pub fn render_csv(report: &BenchReport) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push_str(",input,check\n");
    for cell in &report.cells {
        let input = &report.inputs[cell.input];
        match &cell.run {
            Ok(run) => {
                let line = write_result(&record(report, cell, run), RecordFormat::CsvRow);
                let mut fields: Vec<&str> = line.split(',').collect();
                let eps = cell.row.eps.map(fmt_real).unwrap_or_default();
                fields[1] = &eps;
                out.push_str(&fields.join(","));
                let _ = writeln!(out, ",{},{}", csv_quote(&input.label), csv_quote(&run.check.label()));
            }
            Err(msg) => {
                let eps = cell.row.eps.map(fmt_real).unwrap_or_default();
                let _ = write!(out, "{},{eps},{},{}", cell.row.algorithm, input.points.len(), input.points.dim());
                out.push_str(&",".repeat(CSV_COLUMNS.len() - 4));
                let _ = writeln!(out, ",{},{}", csv_quote(&input.label), csv_quote(&format!("error: {msg}")));
            }
        }
    }
    out
}

/// Matrix of median times in milliseconds. Violations are marked `!` and
/// failed cells `error`; both are listed under the table.
pub fn render_markdown(report: &BenchReport) -> String {
    let cols = report.inputs.len();
    let mut out = String::from("| algorithm | eps |");
    for k in 0..cols {
        let _ = write!(out, " in{} |", k + 1);
    }
    out.push_str("\n|---|---:|");
    out.push_str(&"---:|".repeat(cols));
    out.push('\n');
    let mut notes = Vec::new();
    for (r, row) in report.rows.iter().enumerate() {
        let _ = write!(out, "| {} | {} |", row.algorithm, eps_label(row.eps));
        for cell in &report.cells[r * cols..(r + 1) * cols] {
            let text = match &cell.run {
                Ok(run) => {
                    let mut t = format!("{:.3}", run.median.as_secs_f64() * 1e3);
                    if let Check::Violation(m) = &run.check {
                        t.push_str(" !");
                        notes.push(format!("{} eps={} in{}: {m}", row.algorithm, eps_label(row.eps), cell.input + 1));
                    }
                    t
                }
                Err(msg) => {
                    notes.push(format!("{} eps={} in{}: {msg}", row.algorithm, eps_label(row.eps), cell.input + 1));
                    "error".into()
                }
            };
            let _ = write!(out, " {text} |");
        }
        out.push('\n');
    }
    out.push_str("\nMedian wall time in ms.\n\n");
    for (k, inp) in report.inputs.iter().enumerate() {
        let oracle = report.oracles[k].map_or_else(|| "not computed".into(), fmt_real);
        let _ = writeln!(
            out,
            "- in{}: {} (n={}, d={}, diameter {oracle})",
            k + 1,
            inp.label,
            inp.points.len(),
            inp.points.dim()
        );
    }
    if !notes.is_empty() {
        out.push_str("\nProblems:\n\n");
        for n in notes {
            let _ = writeln!(out, "- {n}");
        }
    }
    out
}

#[derive(Serialize)]
struct JsonCell<'a> {
    input: &'a str,
    algorithm: &'a str,
    eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    record: Option<ResultRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<&'a Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

pub fn render_json(report: &BenchReport) -> String {
    let cells: Vec<JsonCell> = report
        .cells
        .iter()
        .map(|cell| {
            let (record, check, error) = match &cell.run {
                Ok(run) => (Some(record(report, cell, run)), Some(&run.check), None),
                Err(msg) => (None, None, Some(msg.as_str())),
            };
            JsonCell {
                input: &report.inputs[cell.input].label,
                algorithm: cell.row.algorithm.name(),
                eps: cell.row.eps,
                record,
                check,
                error,
            }
        })
        .collect();
    serde_json::to_string_pretty(&cells).expect("cells serialize")
}
