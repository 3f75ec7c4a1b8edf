//! Command dispatch and the parallel drivers.

use crate::config::{Command, ConfigError, Format, Job, JobConfig};
use crate::output::{format_float, plot_data_csv, write_atomic, CsvBuffer};
use crate::records::*;
use divball_core::calibrate::{
    alpha_benchmark, kappa_grid, margin_cell, nominal_mean, radius_for_margin, sweep_point, AlphaBenchmark,
    CalibrationError, CalibrationSpec, MarginTable, SweepRecord,
};
use divball_core::divergence::{divergence, Generator};
use divball_core::quadrature::Status;
use divball_core::tailcheck::{ball_verdict, classify};
use divball_core::{DistributionModel, SolverConfig, WorstCaseProblem};
use log::{debug, info};
use rayon::prelude::*;
use serde::Serialize;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Numeric(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot build thread pool: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RunError::Config(_) => "validation",
            RunError::Numeric(_) => "numeric",
            RunError::Io(_) => "io",
            RunError::Threads(_) => "threads",
        }
    }

    /// One-line JSON error record.
    pub fn record(&self) -> String {
        serde_json::json!({
            "error": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        })
        .to_string()
    }
}

fn numeric(e: impl ToString) -> RunError {
    RunError::Numeric(e.to_string())
}

/// Overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// Loads, validates and executes a job config.
pub fn run(config_path: &Path, opts: &RunOptions) -> Result<PathBuf, RunError> {
    let cfg = JobConfig::from_path(config_path)?;
    let mut job = cfg.validate()?;
    if let Some(p) = &opts.output {
        job.output.path = p.clone();
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    pool.install(|| execute(&job))?;
    Ok(job.output.path)
}

fn to_json<T: Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(v).expect("records serialize");
    s.push(b'\n');
    s
}

fn single_row_csv(header: &[&str], row: Vec<String>) -> Vec<u8> {
    let mut buf = CsvBuffer::new(header).expect("header");
    buf.row(row).expect("row");
    buf.into_bytes()
}

fn opt(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

fn solution_fields(s: &SolutionRecord) -> Vec<String> {
    vec![
        format_float(s.alpha1),
        format_float(s.alpha2),
        format_float(s.worst_mean),
        format_float(s.achieved_divergence),
        format_float(s.normalization_residual),
        s.iterations.to_string(),
        s.monotone.to_string(),
    ]
}

const SOLUTION_HEADER: [&str; 7] =
    ["alpha1", "alpha2", "worst_mean", "achieved_divergence", "normalization_residual", "iterations", "monotone"];

/// Executes a validated job and writes its output. Outputs with partial
/// failures are still written before the numeric error is returned.
pub fn execute(job: &Job) -> Result<(), RunError> {
    info!("running {} for {}", job.command.name(), job.nominal_label);
    let format = job.output.format;
    let path = &job.output.path;
    match job.command {
        Command::Classify => {
            let rep = classify(&job.nominal).map_err(numeric)?;
            let rec = ClassifyRecord::new(job.nominal_label.clone(), &rep);
            let bytes = match format {
                Format::Json => to_json(&rec),
                Format::Csv => single_row_csv(
                    &["model", "tail_class", "degree", "lim_phi_over_x", "lim_phi_over_logx"],
                    vec![
                        rec.model.clone(),
                        rec.tail_class.clone(),
                        opt(rec.degree),
                        format_float(rec.lim_phi_over_x),
                        format_float(rec.lim_phi_over_logx),
                    ],
                ),
            };
            write_atomic(path, &bytes)?;
            Ok(())
        }
        Command::Divergence => {
            let (alt_label, alt) = &job.alternatives[0];
            let (gen_label, gen) = &job.generators[0];
            let r = divergence(gen, alt, &job.nominal, &job.solver.quadrature);
            let rec = DivergenceRecord {
                generator: gen_label.clone(),
                alternative: alt_label.clone(),
                nominal: job.nominal_label.clone(),
                result: (&r).into(),
            };
            let value = match r.status {
                Status::Converged => r.value,
                _ => f64::INFINITY,
            };
            let bytes = match format {
                Format::Json => to_json(&rec),
                Format::Csv => single_row_csv(
                    &["generator", "alternative", "value", "error_estimate", "status"],
                    vec![
                        rec.generator.clone(),
                        rec.alternative.clone(),
                        format_float(value),
                        format_float(r.error_estimate),
                        rec.result.status.clone(),
                    ],
                ),
            };
            write_atomic(path, &bytes)?;
            if r.status == Status::Inconclusive {
                return Err(numeric(format!("divergence is inconclusive ({:?})", r.detail)));
            }
            Ok(())
        }
        Command::VerdictMatrix => {
            let rows = verdict_matrix(&job.nominal, &job.alternatives, &job.generators, &job.solver);
            let bytes = match format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut buf =
                        CsvBuffer::new(["alternative", "generator", "predicted", "numeric", "agree"]).expect("header");
                    for r in &rows {
                        buf.row([&r.alternative, &r.generator, &r.predicted, &r.numeric, &r.agree.to_string()])
                            .expect("row");
                    }
                    buf.into_bytes()
                }
            };
            write_atomic(path, &bytes)?;
            Ok(())
        }
        Command::WorstCase => {
            let (gen_label, gen) = &job.generators[0];
            let radius = job.radius.expect("validated");
            let mean = nominal_mean(&job.nominal, &job.solver).map_err(numeric)?;
            let sol =
                WorstCaseProblem::new(job.nominal, *gen, radius).and_then(|p| p.solve(&job.solver)).map_err(numeric)?;
            let rec = WorstCaseRecord {
                nominal: job.nominal_label.clone(),
                generator: gen_label.clone(),
                radius,
                nominal_mean: mean,
                solution: (&sol).into(),
            };
            let bytes = match format {
                Format::Json => to_json(&rec),
                Format::Csv => {
                    let mut header = vec!["generator", "radius", "nominal_mean"];
                    header.extend(SOLUTION_HEADER);
                    let mut row = vec![rec.generator.clone(), format_float(radius), format_float(mean)];
                    row.extend(solution_fields(&rec.solution));
                    single_row_csv(&header, row)
                }
            };
            write_atomic(path, &bytes)?;
            Ok(())
        }
        Command::Calibrate => {
            let (gen_label, gen) = &job.generators[0];
            let margin = job.margin.expect("validated");
            let mean = nominal_mean(&job.nominal, &job.solver).map_err(numeric)?;
            let r = radius_for_margin(&job.nominal, gen, margin, &job.solver).map_err(numeric)?;
            let rec = CalibrateRecord {
                nominal: job.nominal_label.clone(),
                generator: gen_label.clone(),
                margin,
                nominal_mean: mean,
                kappa: r.kappa,
                solution: r.solution.as_ref().map(SolutionRecord::from),
            };
            let bytes = match format {
                Format::Json => to_json(&rec),
                Format::Csv => single_row_csv(
                    &["generator", "margin", "nominal_mean", "kappa", "worst_mean"],
                    vec![
                        rec.generator.clone(),
                        format_float(margin),
                        format_float(mean),
                        format_float(r.kappa),
                        opt(r.solution.as_ref().map(|s| s.worst_mean)),
                    ],
                ),
            };
            write_atomic(path, &bytes)?;
            Ok(())
        }
        Command::Sweep => {
            let k = job.kappa.as_ref().expect("validated");
            let records =
                parallel_sweep(&job.nominal, &job.theta_grid, (k.from, k.to), k.points, job.ybar, &job.solver);
            let bytes = match format {
                Format::Csv => plot_data_csv(&records.iter().map(PlotRow::from).collect::<Vec<_>>()),
                Format::Json => to_json(&records.iter().map(SweepPointRecord::from).collect::<Vec<_>>()),
            };
            write_atomic(path, &bytes)?;
            let failed = records.iter().filter(|r| r.result.is_err()).count();
            if failed > 0 {
                return Err(numeric(format!("{failed} of {} sweep points failed", records.len())));
            }
            Ok(())
        }
        Command::Table1 => {
            let spec = job.calibration_spec()?;
            let table = parallel_margin_table(&spec, &job.solver).map_err(numeric)?;
            let bytes = match format {
                Format::Csv => table_csv(&table),
                Format::Json => to_json(&table_record(&job.nominal_label, &table)),
            };
            write_atomic(path, &bytes)?;
            let failed = table.cells.iter().flatten().filter(|c| c.is_err()).count();
            if failed > 0 {
                return Err(numeric(format!("{failed} table cells failed")));
            }
            Ok(())
        }
    }
}

/// Predicted against numeric verdicts, row-major over alternatives.
pub fn verdict_matrix(
    nu: &DistributionModel,
    alternatives: &[(String, DistributionModel)],
    generators: &[(String, Generator)],
    cfg: &SolverConfig,
) -> Vec<VerdictRecord> {
    let pairs: Vec<_> = alternatives.iter().flat_map(|a| generators.iter().map(move |g| (a, g))).collect();
    pairs
        .par_iter()
        .map(|((al, eta), (gl, gen))| {
            let predicted = ball_verdict(nu, eta, gen, &cfg.quadrature);
            let r = divergence(gen, eta, nu, &cfg.quadrature);
            debug!("{al} / {gl}: predicted {predicted:?}, numeric {:?}", r.status);
            VerdictRecord::new(al.clone(), gl.clone(), predicted, &r)
        })
        .collect()
}

/// [`divball_core::calibrate::figure1_sweep`] with the points solved in
/// parallel; the output order is θ-major as in the sequential version.
pub fn parallel_sweep(
    nominal: &DistributionModel,
    thetas: &[f64],
    kappa_range: (f64, f64),
    n_points: usize,
    ybar: f64,
    cfg: &SolverConfig,
) -> Vec<SweepRecord> {
    let kappas = kappa_grid(kappa_range.0, kappa_range.1, n_points);
    let points: Vec<(f64, f64)> = thetas.iter().flat_map(|&t| kappas.iter().map(move |&k| (t, k))).collect();
    points.par_iter().map(|&(t, k)| sweep_point(nominal, t, k, ybar, cfg)).collect()
}

/// [`divball_core::calibrate::margin_table`] with benchmarks and cells
/// computed in parallel.
pub fn parallel_margin_table(spec: &CalibrationSpec, cfg: &SolverConfig) -> Result<MarginTable, CalibrationError> {
    spec.validate()?;
    let mean = nominal_mean(&spec.nominal, cfg)?;
    let benchmarks: Vec<Result<AlphaBenchmark, CalibrationError>> =
        spec.alpha_grid.par_iter().map(|&a| alpha_benchmark(spec, a, cfg)).collect();
    let n_alpha = spec.alpha_grid.len();
    let flat: Vec<_> = (0..spec.theta_grid.len() * n_alpha)
        .into_par_iter()
        .map(|k| {
            let theta = spec.theta_grid[k / n_alpha];
            match &benchmarks[k % n_alpha] {
                Ok(b) => margin_cell(spec, b, theta, cfg),
                Err(e) => Err(e.clone()),
            }
        })
        .collect();
    let mut it = flat.into_iter();
    let cells = (0..spec.theta_grid.len()).map(|_| it.by_ref().take(n_alpha).collect()).collect();
    Ok(MarginTable::assemble(spec, mean, cells))
}

/// Table layout: a header of α values, one row per θ, excess margins in
/// percent to 4 decimals. Failed cells are left empty.
pub fn table_csv(table: &MarginTable) -> Vec<u8> {
    let mut header = vec!["theta\\alpha".to_string()];
    header.extend(table.alphas.iter().map(|a| a.to_string()));
    let mut buf = CsvBuffer::new(&header).expect("header");
    for (i, theta) in table.thetas.iter().enumerate() {
        let mut row = vec![theta.to_string()];
        row.extend((0..table.alphas.len()).map(|j| table.excess(i, j).map(|v| format!("{v:.4}")).unwrap_or_default()));
        buf.row(&row).expect("row");
    }
    buf.into_bytes()
}

pub fn table_record(nominal: &str, table: &MarginTable) -> TableRecord {
    let cells = table
        .thetas
        .iter()
        .enumerate()
        .flat_map(|(i, &t)| table.alphas.iter().enumerate().map(move |(j, &a)| (i, j, t, a)))
        .map(|(i, j, t, a)| CellRecord::new(t, a, &table.cells[i][j]))
        .collect();
    TableRecord {
        nominal: nominal.to_string(),
        nominal_mean: table.nominal_mean,
        margin: table.margin,
        thetas: table.thetas.clone(),
        alphas: table.alphas.clone(),
        cells,
    }
}
