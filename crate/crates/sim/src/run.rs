//! Driving a configured run: initial data, stepping, diagnostics and output.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use serde::Serialize;

use crate::config::SimConfig;
use crate::error::{Result, SimError};
use crate::grid::{quadrature, GridField};
use crate::model::Problem;
use crate::plan::discretize;
use crate::rk4::Rk4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub mass: f64,
    pub l2: f64,
    pub min: f64,
    pub max: f64,
}

impl DiagnosticsRow {
    /// Statistics of the density seen by `problem` in `state`.
    pub fn of(problem: &Problem, t: f64, state: &[f64]) -> Self {
        let grid = problem.grid();
        let f = problem.density_of(state);
        let sq: Vec<f64> = f.iter().map(|v| v * v).collect();
        DiagnosticsRow {
            t,
            mass: quadrature(grid, &f),
            l2: quadrature(grid, &sq).sqrt(),
            min: f.iter().copied().fold(f64::INFINITY, f64::min),
            max: f.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// Samples the initial expressions (one per component) on the problem grid.
/// Returns the state and any periodicity warnings.
pub fn initial_state(
    problem: &Problem,
    init: &[String],
    allow_aperiodic: bool,
) -> Result<(GridField, Vec<String>)> {
    let comps = problem.model().components();
    if init.len() != comps {
        return Err(SimError::Config(format!(
            "expected {comps} initial expressions, got {}",
            init.len()
        )));
    }
    let mut data = Vec::with_capacity(comps * problem.grid().len());
    let mut warnings = Vec::new();
    for text in init {
        let e = problem.chart().parse(text)?;
        let (values, warn) = discretize(&e, problem.chart(), problem.grid(), allow_aperiodic)?;
        data.extend(values);
        warnings.extend(warn);
    }
    Ok((GridField::from_data(problem.grid(), comps, data), warnings))
}

/// Advances `state` by `steps` RK4 steps of size `dt`.
pub fn integrate(problem: &Problem, state: &mut GridField, dt: f64, steps: usize) -> Result<()> {
    Rk4::new(problem.rhs())
        .advance(state.data_mut(), dt, steps)
        .map_err(|step| SimError::NonFinite { step })
}

#[derive(Debug)]
pub struct RunSummary {
    pub final_state: GridField,
    pub diagnostics: Vec<DiagnosticsRow>,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    program: &'static str,
    version: &'static str,
    config: &'a SimConfig,
    status: &'a str,
    steps_completed: usize,
    diagnostics_rows: usize,
    warnings: &'a [String],
}

struct Output {
    traj: csv::Writer<BufWriter<File>>,
    diag: csv::Writer<BufWriter<File>>,
}

fn create(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    let file = File::create(path).map_err(|source| io_err(path, source))?;
    Ok(csv::Writer::from_writer(BufWriter::new(file)))
}

fn io_err(path: &Path, source: std::io::Error) -> SimError {
    SimError::Io { path: path.display().to_string(), source }
}

fn csv_err(path: &Path, e: csv::Error) -> SimError {
    io_err(path, std::io::Error::other(e))
}

impl Output {
    fn open(cfg: &SimConfig, comps: usize) -> Result<Self> {
        let mut traj = create(&cfg.out)?;
        let mut header: Vec<String> = ["t", "i", "j", "k"].map(String::from).to_vec();
        header.extend((0..comps).map(|c| format!("comp{c}")));
        traj.write_record(&header).map_err(|e| csv_err(&cfg.out, e))?;
        let mut diag = create(&cfg.diag)?;
        diag.write_record(["t", "mass", "l2", "min", "max"])
            .map_err(|e| csv_err(&cfg.diag, e))?;
        Ok(Output { traj, diag })
    }

    fn record(&mut self, cfg: &SimConfig, state: &GridField, row: &DiagnosticsRow) -> Result<()> {
        let grid = state.grid();
        let mut rec = Vec::with_capacity(4 + state.comps());
        for node in 0..grid.len() {
            let ijk = grid.unflatten(node);
            rec.clear();
            rec.push(row.t.to_string());
            rec.extend(ijk.iter().map(|v| v.to_string()));
            rec.extend((0..state.comps()).map(|c| state.comp(c)[node].to_string()));
            self.traj.write_record(&rec).map_err(|e| csv_err(&cfg.out, e))?;
        }
        self.diag
            .write_record([row.t, row.mass, row.l2, row.min, row.max].map(|v| v.to_string()))
            .map_err(|e| csv_err(&cfg.diag, e))
    }

    fn flush(&mut self, cfg: &SimConfig) -> Result<()> {
        self.traj.flush().map_err(|e| io_err(&cfg.out, e))?;
        self.diag.flush().map_err(|e| io_err(&cfg.diag, e))
    }
}

fn write_manifest(cfg: &SimConfig, m: &Manifest) -> Result<()> {
    let path = cfg.manifest_path();
    let mut text = serde_json::to_string_pretty(m).expect("manifest serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| io_err(&path, e))
}

/// Runs `cfg`, writing the trajectory CSV, the diagnostics CSV and a JSON
/// manifest next to the trajectory. On a non-finite state the outputs written
/// so far are flushed before the error is returned.
pub fn run_simulation(cfg: &SimConfig) -> Result<RunSummary> {
    let problem = Problem::new(cfg.model, cfg.physics()?, cfg.n)?;
    let (mut state, mut warnings) = initial_state(&problem, &cfg.init, cfg.allow_aperiodic)?;
    let limit = problem.cfl_limit();
    if cfg.dt > limit {
        warnings.push(format!("dt = {} exceeds the advisory CFL bound {limit:.3e}", cfg.dt));
    }
    let mut out = Output::open(cfg, state.comps())?;
    let mut diagnostics = Vec::new();
    let mut rk = Rk4::new(problem.rhs());
    let row = DiagnosticsRow::of(&problem, 0.0, state.data());
    out.record(cfg, &state, &row)?;
    diagnostics.push(row);

    let mut failure = None;
    for step in 1..=cfg.steps {
        rk.step(state.data_mut(), cfg.dt);
        if !state.is_finite() {
            failure = Some(step);
            break;
        }
        if step % cfg.cadence == 0 {
            let row = DiagnosticsRow::of(&problem, step as f64 * cfg.dt, state.data());
            out.record(cfg, &state, &row)?;
            diagnostics.push(row);
        }
    }
    out.flush(cfg)?;
    let manifest = Manifest {
        program: "liftlab",
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        status: if failure.is_some() { "non-finite" } else { "ok" },
        steps_completed: failure.map_or(cfg.steps, |s| s - 1),
        diagnostics_rows: diagnostics.len(),
        warnings: &warnings,
    };
    write_manifest(cfg, &manifest)?;
    if let Some(step) = failure {
        return Err(SimError::NonFinite { step });
    }
    Ok(RunSummary { final_state: state, diagnostics, warnings })
}
