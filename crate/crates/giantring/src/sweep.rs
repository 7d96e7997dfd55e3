//! Grid evaluation and tabular output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use giantring_core::single::{self, SingleCavitySpec};
use giantring_core::two::{self, TwoCavitySpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ModelSpec, Output, Param, SweepConfig};
use crate::error::{AppError, Result};
use crate::plot;

/// Scientific notation with 12 significant digits; `-0` prints as `0`.
pub fn format_number(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

/// One failed evaluation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    pub row: usize,
    /// Output column, or `*` when the whole point failed.
    pub column: String,
    pub coordinates: Vec<f64>,
    pub message: String,
}

/// Evaluated grid: axis columns first, then the requested outputs. The last
/// axis varies fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Serialize)]
struct DiagReport<'a> {
    name: &'a str,
    points: usize,
    errors: &'a [Diagnostic],
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of one column, `None` where evaluation failed.
    pub fn values(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.column(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                if let Some(v) = cell {
                    out.push_str(&format_number(*v));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn diagnostics_json(&self, name: &str) -> String {
        let report = DiagReport {
            name,
            points: self.rows.len(),
            errors: &self.diagnostics,
        };
        let mut text = serde_json::to_string_pretty(&report).expect("diagnostics serialize");
        text.push('\n');
        text
    }
}

/// Every grid point in table order.
pub fn grid_points(cfg: &SweepConfig) -> Vec<Vec<(Param, f64)>> {
    let axes: Vec<(Param, Vec<f64>)> = cfg.axes.iter().map(|a| (a.param, a.values())).collect();
    let mut points = vec![Vec::new()];
    for (param, values) in &axes {
        points = points
            .into_iter()
            .flat_map(|prefix: Vec<(Param, f64)>| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push((*param, v));
                    p
                })
            })
            .collect();
    }
    points
}

/// Evaluates the sweep on the global rayon pool.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Table> {
    cfg.validate()?;
    let points = grid_points(cfg);
    let evaluated: Vec<Result<PointResult>> = points.par_iter().map(|p| evaluate_point(cfg, p)).collect();
    assemble(cfg, &points, evaluated)
}

/// Evaluates the sweep on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(cfg: &SweepConfig, threads: usize) -> Result<Table> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| AppError::Usage(format!("cannot start {threads} worker threads: {e}")))?;
    pool.install(|| run_sweep(cfg))
}

struct PointResult {
    cells: Vec<Option<f64>>,
    errors: Vec<(String, String)>,
}

fn assemble(cfg: &SweepConfig, points: &[Vec<(Param, f64)>], evaluated: Vec<Result<PointResult>>) -> Result<Table> {
    let mut columns: Vec<String> = cfg.axes.iter().map(|a| a.param.name().to_string()).collect();
    columns.extend(cfg.outputs.iter().map(|o| o.name().to_string()));
    let mut rows = Vec::with_capacity(points.len());
    let mut diagnostics = Vec::new();
    for (row, (point, result)) in points.iter().zip(evaluated).enumerate() {
        let coordinates: Vec<f64> = point.iter().map(|(_, v)| *v).collect();
        let mut cells: Vec<Option<f64>> = coordinates.iter().map(|v| Some(*v)).collect();
        let result = result?;
        cells.extend(result.cells);
        for (column, message) in result.errors {
            diagnostics.push(Diagnostic {
                row,
                column,
                coordinates: coordinates.clone(),
                message,
            });
        }
        rows.push(cells);
    }
    Ok(Table {
        columns,
        rows,
        diagnostics,
    })
}

fn detuning_of(point: &[(Param, f64)]) -> f64 {
    point.iter().find(|(p, _)| *p == Param::DeltaC).map_or(0.0, |(_, v)| *v)
}

fn evaluate_point(cfg: &SweepConfig, point: &[(Param, f64)]) -> Result<PointResult> {
    let detuning = detuning_of(point);
    Ok(match cfg.build(point)? {
        ModelSpec::Single(spec) => evaluate_single(&spec, detuning, &cfg.outputs),
        ModelSpec::Two(spec) => evaluate_two(&spec, detuning, &cfg.outputs),
    })
}

fn failed(outputs: &[Output], message: String) -> PointResult {
    PointResult {
        cells: vec![None; outputs.len()],
        errors: vec![("*".to_string(), message)],
    }
}

fn evaluate_single(spec: &SingleCavitySpec, detuning: f64, outputs: &[Output]) -> PointResult {
    let rates = match single::mode_rates(spec) {
        Ok(r) => r,
        Err(e) => return failed(outputs, e.to_string()),
    };
    let wants_transmission = outputs.iter().any(|o| matches!(o, Output::TL | Output::TR | Output::Isolation));
    let record = if wants_transmission {
        Some(single::evaluate(spec, detuning))
    } else {
        None
    };
    let mut cells = Vec::with_capacity(outputs.len());
    let mut errors = Vec::new();
    for output in outputs {
        let value: std::result::Result<f64, String> = match output {
            Output::DeltaCw => Ok(rates.delta_cw),
            Output::DeltaCcw => Ok(rates.delta_ccw),
            Output::GammaCw => Ok(rates.gamma_cw),
            Output::GammaCcw => Ok(rates.gamma_ccw),
            Output::GammapCw => Ok(rates.gammap_cw),
            Output::GammapCcw => Ok(rates.gammap_ccw),
            Output::Chirality => rates.chirality().map_err(|e| e.to_string()),
            Output::TL | Output::TR | Output::Isolation => transmission_cell(record.as_ref().unwrap(), *output),
        };
        match value {
            Ok(v) => cells.push(Some(v)),
            Err(message) => {
                cells.push(None);
                errors.push((output.name().to_string(), message));
            }
        }
    }
    PointResult { cells, errors }
}

fn transmission_cell(
    record: &giantring_core::Result<single::TransmissionRecord>,
    output: Output,
) -> std::result::Result<f64, String> {
    let r = record.as_ref().map_err(|e| e.to_string())?;
    match output {
        Output::TL => Ok(r.t_left),
        Output::TR => Ok(r.t_right),
        _ => two::isolation(r.t_left, r.t_right).map_err(|e| e.to_string()),
    }
}

fn evaluate_two(spec: &TwoCavitySpec, detuning: f64, outputs: &[Output]) -> PointResult {
    let record = two::evaluate(spec, detuning);
    let mut cells = Vec::with_capacity(outputs.len());
    let mut errors = Vec::new();
    for output in outputs {
        match transmission_cell(&record, *output) {
            Ok(v) => cells.push(Some(v)),
            Err(message) => {
                cells.push(None);
                errors.push((output.name().to_string(), message));
            }
        }
    }
    PointResult { cells, errors }
}

/// Paths of the four files written for one sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputFiles {
    pub config: PathBuf,
    pub csv: PathBuf,
    pub plot: PathBuf,
    pub diagnostics: PathBuf,
}

impl OutputFiles {
    /// `<prefix>.config.json`, `<prefix>.csv`, `<prefix>.plot` and
    /// `<prefix>.diag.json`.
    pub fn for_prefix(prefix: &Path) -> Self {
        let with = |suffix: &str| {
            let mut s = prefix.as_os_str().to_owned();
            s.push(suffix);
            PathBuf::from(s)
        };
        Self {
            config: with(".config.json"),
            csv: with(".csv"),
            plot: with(".plot"),
            diagnostics: with(".diag.json"),
        }
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| AppError::io(path, e))
}

/// Writes the config, table, plot script and diagnostics next to each
/// other. The plot script refers to the CSV by file name.
pub fn write_outputs(cfg: &SweepConfig, table: &Table, prefix: &Path) -> Result<OutputFiles> {
    let files = OutputFiles::for_prefix(prefix);
    if let Some(dir) = prefix.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
    }
    let csv_name = files
        .csv
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stem = prefix
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| cfg.name.clone());
    write(&files.config, &cfg.to_json())?;
    write(&files.csv, &table.to_csv())?;
    write(&files.plot, &plot::emit_plot_script(cfg, table, &csv_name, &stem))?;
    write(&files.diagnostics, &table.diagnostics_json(&cfg.name))?;
    Ok(files)
}

/// Two-column-per-mode CSV dump of a trajectory: `t`, then the real and
/// imaginary parts of each amplitude.
pub fn trajectory_csv(trajectory: &giantring_core::dynamics::Trajectory, modes: &[&str]) -> String {
    let mut out = String::from("t");
    for m in modes {
        let _ = write!(out, ",re_{m},im_{m}");
    }
    out.push('\n');
    for (t, sample) in trajectory.times.iter().zip(&trajectory.samples) {
        out.push_str(&format_number(*t));
        for z in sample {
            let _ = write!(out, ",{},{}", format_number(z.re), format_number(z.im));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(format_number(1.0), "1.00000000000e0");
        assert_eq!(format_number(-0.0), "0.00000000000e0");
        assert_eq!(format_number(-1.234567890123456e-7), "-1.23456789012e-7");
        assert_eq!(format_number(123456.0), "1.23456000000e5");
    }

    #[test]
    fn prefix_paths() {
        let f = OutputFiles::for_prefix(Path::new("out/fig7"));
        assert_eq!(f.csv, PathBuf::from("out/fig7.csv"));
        assert_eq!(f.config, PathBuf::from("out/fig7.config.json"));
        assert_eq!(f.diagnostics, PathBuf::from("out/fig7.diag.json"));
    }
}
