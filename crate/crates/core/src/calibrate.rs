//! Safety-margin calibration.
//!
//! A margin `m` under an α-divergence fixes the radius `κ_α` whose worst
//! case is exactly `(1 + m)` times the nominal mean. That α worst case then
//! serves as a benchmark model: its F_Φ-divergence from the nominal gives
//! `κ′`, and the F_Φ worst case at `κ′` is compared with the benchmark. The
//! table entry is the percentage by which the F_Φ worst case exceeds the
//! reference margin.

use crate::distributions::{DistributionModel, ModelError};
use crate::divergence::{divergence, DivergenceError, FPhiGenerator, Generator};
use crate::quadrature::Status;
use crate::worstcase::{
    solve_for_mean, SolverConfig, WorstCaseDensity, WorstCaseError, WorstCaseProblem, WorstCaseSolution,
};
use alloc::vec::Vec;
use core::f64::consts::E;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalibrationError {
    #[error("invalid calibration spec: {0}")]
    Spec(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Divergence(#[from] DivergenceError),
    #[error(transparent)]
    WorstCase(#[from] WorstCaseError),
    #[error("the {what} integral did not converge ({status:?})")]
    Quadrature { what: &'static str, status: Status },
    #[error("worst-case mean {achieved} misses the target {target}")]
    Residual { achieved: f64, target: f64 },
}

/// Inputs of a margin table.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationSpec {
    pub nominal: DistributionModel,
    pub margin: f64,
    pub alpha_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    pub ybar: f64,
}

impl CalibrationSpec {
    pub fn new(
        nominal: DistributionModel,
        margin: f64,
        alpha_grid: Vec<f64>,
        theta_grid: Vec<f64>,
        ybar: f64,
    ) -> Result<Self, CalibrationError> {
        let spec = Self { nominal, margin, alpha_grid, theta_grid, ybar };
        spec.validate()?;
        Ok(spec)
    }

    /// Truncated Weibull(0.4015, 0.6821) above its 95% quantile, a 10%
    /// margin, α ∈ {1.1, 1.5, 2, 2.5, 3}, θ ∈ {1.1, 1.5, 2, 2.5}, ȳ = e.
    pub fn solar_flares() -> Self {
        let nominal = DistributionModel::weibull(0.4015, 0.6821)
            .and_then(|w| w.truncated_above(0.95))
            .expect("fixed parameters are valid");
        Self {
            nominal,
            margin: 0.10,
            alpha_grid: alloc::vec![1.1, 1.5, 2.0, 2.5, 3.0],
            theta_grid: alloc::vec![1.1, 1.5, 2.0, 2.5],
            ybar: E,
        }
    }

    pub fn validate(&self) -> Result<(), CalibrationError> {
        if !(self.margin > 0.0 && self.margin.is_finite()) {
            return Err(CalibrationError::Spec("margin must be positive"));
        }
        if self.alpha_grid.is_empty() || self.theta_grid.is_empty() {
            return Err(CalibrationError::Spec("alpha and theta grids must be nonempty"));
        }
        if self.alpha_grid.iter().chain(&self.theta_grid).any(|&v| !(v > 1.0 && v.is_finite())) {
            return Err(CalibrationError::Spec("every alpha and theta must exceed 1"));
        }
        if !(self.ybar >= 1.0) {
            return Err(CalibrationError::Spec("ybar must be at least 1"));
        }
        self.nominal.phi_family()?;
        Ok(())
    }

    pub fn fphi(&self, theta: f64) -> Result<Generator, CalibrationError> {
        Ok(Generator::FPhi(FPhiGenerator::new(self.nominal.phi_family()?, theta, self.ybar)?))
    }
}

/// Nominal mean, failing unless the quadrature converged.
pub fn nominal_mean(nominal: &DistributionModel, cfg: &SolverConfig) -> Result<f64, CalibrationError> {
    let m = nominal.moment(1.0, &cfg.quadrature);
    if m.is_converged() {
        Ok(m.value)
    } else {
        Err(CalibrationError::Quadrature { what: "nominal mean", status: m.status })
    }
}

/// Radius whose worst case sits exactly `margin` above the nominal mean.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginRadius {
    pub kappa: f64,
    /// `None` for a zero margin, where the ball degenerates to the nominal.
    pub solution: Option<WorstCaseSolution>,
}

pub fn radius_for_margin(
    nominal: &DistributionModel,
    generator: &Generator,
    margin: f64,
    cfg: &SolverConfig,
) -> Result<MarginRadius, CalibrationError> {
    if margin == 0.0 {
        return Ok(MarginRadius { kappa: 0.0, solution: None });
    }
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(CalibrationError::Spec("margin must be nonnegative"));
    }
    let mean = nominal_mean(nominal, cfg)?;
    let target = (1.0 + margin) * mean;
    let sol = solve_for_mean(nominal, generator, target, cfg)?;
    if (sol.worst_mean / target - 1.0).abs() > 1e-5 {
        return Err(CalibrationError::Residual { achieved: sol.worst_mean, target });
    }
    Ok(MarginRadius { kappa: sol.achieved_divergence, solution: Some(sol) })
}

/// `D_target(η | ν)` for a benchmark density `η`.
pub fn cross_radius(
    nominal: &DistributionModel,
    source: &WorstCaseDensity,
    target: &Generator,
    cfg: &SolverConfig,
) -> Result<f64, CalibrationError> {
    let r = divergence(target, source, nominal, &cfg.quadrature);
    if r.is_converged() {
        Ok(r.value)
    } else {
        Err(CalibrationError::Quadrature { what: "cross divergence", status: r.status })
    }
}

/// The calibrated α worst case shared by one column of the table.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaBenchmark {
    pub alpha: f64,
    pub kappa: f64,
    pub nominal_mean: f64,
    pub solution: WorstCaseSolution,
    pub density: WorstCaseDensity,
}

pub fn alpha_benchmark(
    spec: &CalibrationSpec,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<AlphaBenchmark, CalibrationError> {
    let generator = Generator::alpha(alpha)?;
    let nominal_mean = nominal_mean(&spec.nominal, cfg)?;
    let radius = radius_for_margin(&spec.nominal, &generator, spec.margin, cfg)?;
    let solution = radius.solution.ok_or(CalibrationError::Spec("margin must be positive"))?;
    let density = solution.density(spec.nominal, generator);
    Ok(AlphaBenchmark { alpha, kappa: radius.kappa, nominal_mean, solution, density })
}

/// One table entry with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginCell {
    pub theta: f64,
    pub alpha: f64,
    pub kappa_alpha: f64,
    pub kappa_fphi: f64,
    pub alpha_worst_mean: f64,
    pub fphi_worst_mean: f64,
    /// `100·(fphi_worst_mean/nominal_mean - 1 - margin)`.
    pub excess_percent: f64,
}

pub fn margin_cell(
    spec: &CalibrationSpec,
    benchmark: &AlphaBenchmark,
    theta: f64,
    cfg: &SolverConfig,
) -> Result<MarginCell, CalibrationError> {
    let generator = spec.fphi(theta)?;
    let kappa_fphi = cross_radius(&spec.nominal, &benchmark.density, &generator, cfg)?;
    let sol = WorstCaseProblem::new(spec.nominal, generator, kappa_fphi)?.solve(cfg)?;
    Ok(MarginCell {
        theta,
        alpha: benchmark.alpha,
        kappa_alpha: benchmark.kappa,
        kappa_fphi,
        alpha_worst_mean: benchmark.solution.worst_mean,
        fphi_worst_mean: sol.worst_mean,
        excess_percent: 100.0 * (sol.worst_mean / benchmark.nominal_mean - 1.0 - spec.margin),
    })
}

/// Excess margins over the θ × α grid; each cell fails independently.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginTable {
    pub thetas: Vec<f64>,
    pub alphas: Vec<f64>,
    pub nominal_mean: f64,
    pub margin: f64,
    /// `cells[i][j]` for `thetas[i]`, `alphas[j]`.
    pub cells: Vec<Vec<Result<MarginCell, CalibrationError>>>,
}

impl MarginTable {
    /// Assembles a table from per-column benchmarks and per-cell results,
    /// as produced by a parallel driver.
    pub fn assemble(
        spec: &CalibrationSpec,
        nominal_mean: f64,
        cells: Vec<Vec<Result<MarginCell, CalibrationError>>>,
    ) -> Self {
        Self {
            thetas: spec.theta_grid.clone(),
            alphas: spec.alpha_grid.clone(),
            nominal_mean,
            margin: spec.margin,
            cells,
        }
    }

    pub fn excess(&self, i: usize, j: usize) -> Option<f64> {
        self.cells.get(i)?.get(j)?.as_ref().ok().map(|c| c.excess_percent)
    }
}

pub fn margin_table(spec: &CalibrationSpec, cfg: &SolverConfig) -> Result<MarginTable, CalibrationError> {
    spec.validate()?;
    let mean = nominal_mean(&spec.nominal, cfg)?;
    let benchmarks: Vec<Result<AlphaBenchmark, CalibrationError>> =
        spec.alpha_grid.iter().map(|&a| alpha_benchmark(spec, a, cfg)).collect();
    let cells = spec
        .theta_grid
        .iter()
        .map(|&theta| {
            benchmarks
                .iter()
                .map(|b| match b {
                    Ok(b) => margin_cell(spec, b, theta, cfg),
                    Err(e) => Err(e.clone()),
                })
                .collect()
        })
        .collect();
    Ok(MarginTable::assemble(spec, mean, cells))
}

/// One point of a κ-sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub theta: f64,
    pub kappa: f64,
    pub result: Result<WorstCaseSolution, WorstCaseError>,
}

impl SweepRecord {
    pub fn worst_mean(&self) -> Option<f64> {
        self.result.as_ref().ok().map(|s| s.worst_mean)
    }
}

/// `n` evenly spaced radii from `lo` to `hi` inclusive.
pub fn kappa_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

pub fn sweep_point(nominal: &DistributionModel, theta: f64, kappa: f64, ybar: f64, cfg: &SolverConfig) -> SweepRecord {
    let result = nominal
        .phi_family()
        .map_err(WorstCaseError::Model)
        .and_then(|phi| FPhiGenerator::new(phi, theta, ybar).map_err(WorstCaseError::Generator))
        .and_then(|g| WorstCaseProblem::new(*nominal, Generator::FPhi(g), kappa))
        .and_then(|p| p.solve(cfg));
    SweepRecord { theta, kappa, result }
}

/// F_Φ worst-case means over θ × κ, θ-major.
pub fn figure1_sweep(
    nominal: &DistributionModel,
    thetas: &[f64],
    kappa_range: (f64, f64),
    n_points: usize,
    ybar: f64,
    cfg: &SolverConfig,
) -> Vec<SweepRecord> {
    let kappas = kappa_grid(kappa_range.0, kappa_range.1, n_points);
    thetas
        .iter()
        .flat_map(|&t| kappas.iter().map(move |&k| (t, k)))
        .map(|(t, k)| sweep_point(nominal, t, k, ybar, cfg))
        .collect()
}
