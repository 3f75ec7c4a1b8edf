//! JSON job configuration.
//!
//! One schema covers every command; fields a command does not use may be
//! omitted, unknown fields are rejected, and [`JobConfig::validate`] checks
//! everything a command needs before any numeric work starts.
//!
//! ```json
//! {
//!   "command": "worst-case",
//!   "nominal": { "family": "truncated-above", "p": 0.95,
//!                "inner": { "family": "weibull", "shape": 0.4015, "scale": 0.6821 } },
//!   "generator": { "type": "fphi", "theta": 1.5 },
//!   "radius": 0.007,
//!   "output": { "path": "wc.json", "format": "json" }
//! }
//! ```

use divball_core::calibrate::CalibrationSpec;
use divball_core::divergence::{FPhiGenerator, Generator};
use divball_core::quadrature::QuadratureConfig;
use divball_core::{DistributionModel, ModelError, SolverConfig};
use serde::{Deserialize, Serialize};
use std::f64::consts::E;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("command `{command}` requires `{field}`")]
    Missing { command: &'static str, field: &'static str },
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
}

fn invalid(field: &'static str, reason: impl ToString) -> ConfigError {
    ConfigError::Invalid { field, reason: reason.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Classify,
    Divergence,
    VerdictMatrix,
    WorstCase,
    Sweep,
    Calibrate,
    Table1,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Divergence => "divergence",
            Command::VerdictMatrix => "verdict-matrix",
            Command::WorstCase => "worst-case",
            Command::Sweep => "sweep",
            Command::Calibrate => "calibrate",
            Command::Table1 => "table1",
        }
    }
}

/// A model from the family menu.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelDescriptor {
    Exponential { rate: f64 },
    HalfGaussian { scale: f64 },
    Weibull { shape: f64, scale: f64 },
    GeneralizedLognormal { r: f64, sigma: f64, mu: f64 },
    Lognormal { sigma: f64, mu: f64 },
    Pareto { tail: f64, scale: f64 },
    TruncatedAbove { inner: Box<ModelDescriptor>, p: f64 },
}

impl ModelDescriptor {
    pub fn build(&self) -> Result<DistributionModel, ModelError> {
        match self {
            ModelDescriptor::Exponential { rate } => DistributionModel::exponential(*rate),
            ModelDescriptor::HalfGaussian { scale } => DistributionModel::half_gaussian(*scale),
            ModelDescriptor::Weibull { shape, scale } => DistributionModel::weibull(*shape, *scale),
            ModelDescriptor::GeneralizedLognormal { r, sigma, mu } => {
                DistributionModel::generalized_lognormal(*r, *sigma, *mu)
            }
            ModelDescriptor::Lognormal { sigma, mu } => DistributionModel::lognormal(*sigma, *mu),
            ModelDescriptor::Pareto { tail, scale } => DistributionModel::pareto(*tail, *scale),
            ModelDescriptor::TruncatedAbove { inner, p } => inner.build()?.truncated_above(*p),
        }
    }

    /// Short label used in CSV rows.
    pub fn label(&self) -> String {
        match self {
            ModelDescriptor::Exponential { rate } => format!("exponential({rate})"),
            ModelDescriptor::HalfGaussian { scale } => format!("half-gaussian({scale})"),
            ModelDescriptor::Weibull { shape, scale } => format!("weibull({shape};{scale})"),
            ModelDescriptor::GeneralizedLognormal { r, sigma, mu } => {
                format!("generalized-lognormal({r};{sigma};{mu})")
            }
            ModelDescriptor::Lognormal { sigma, mu } => format!("lognormal({sigma};{mu})"),
            ModelDescriptor::Pareto { tail, scale } => format!("pareto({tail};{scale})"),
            ModelDescriptor::TruncatedAbove { inner, p } => format!("truncated({};{p})", inner.label()),
        }
    }
}

/// How ȳ is chosen for F_Φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum YbarConvention {
    /// ȳ = e unless `ybar` is given.
    #[default]
    Fixed,
    /// ȳ = exp(Φ(x̄)).
    Coupled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorDescriptor {
    Kl,
    Alpha {
        alpha: f64,
    },
    Fphi {
        theta: f64,
        #[serde(default)]
        ybar: Option<f64>,
        #[serde(default)]
        convention: YbarConvention,
    },
}

impl GeneratorDescriptor {
    /// F_Φ takes its Φ from the nominal model.
    pub fn build(&self, nominal: &DistributionModel) -> Result<Generator, ConfigError> {
        match self {
            GeneratorDescriptor::Kl => Ok(Generator::Kl),
            GeneratorDescriptor::Alpha { alpha } => Generator::alpha(*alpha).map_err(|e| invalid("generator", e)),
            GeneratorDescriptor::Fphi { theta, ybar, convention } => {
                let phi = nominal.phi_family().map_err(|e| invalid("generator", e))?;
                let g = match (convention, ybar) {
                    (YbarConvention::Coupled, None) => FPhiGenerator::coupled(phi, *theta),
                    (YbarConvention::Coupled, Some(_)) => {
                        return Err(invalid("generator", "`ybar` cannot be combined with the coupled convention"))
                    }
                    (YbarConvention::Fixed, y) => FPhiGenerator::new(phi, *theta, y.unwrap_or(E)),
                };
                g.map(Generator::FPhi).map_err(|e| invalid("generator", e))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            GeneratorDescriptor::Kl => "kl".to_string(),
            GeneratorDescriptor::Alpha { alpha } => format!("alpha({alpha})"),
            GeneratorDescriptor::Fphi { theta, .. } => format!("fphi({theta})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KappaRange {
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grids {
    #[serde(default)]
    pub alpha: Option<Vec<f64>>,
    #[serde(default)]
    pub theta: Option<Vec<f64>>,
    #[serde(default)]
    pub kappa: Option<KappaRange>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default)]
    pub abs: Option<f64>,
    #[serde(default)]
    pub rel: Option<f64>,
    #[serde(default)]
    pub max_subdivisions: Option<usize>,
    #[serde(default)]
    pub solver: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: Command,
    pub nominal: ModelDescriptor,
    #[serde(default)]
    pub alternative: Option<ModelDescriptor>,
    /// Rows of a verdict matrix.
    #[serde(default)]
    pub alternatives: Option<Vec<ModelDescriptor>>,
    #[serde(default)]
    pub generator: Option<GeneratorDescriptor>,
    /// Columns of a verdict matrix.
    #[serde(default)]
    pub generators: Option<Vec<GeneratorDescriptor>>,
    #[serde(default)]
    pub radius: Option<f64>,
    #[serde(default)]
    pub margin: Option<f64>,
    #[serde(default)]
    pub ybar: Option<f64>,
    #[serde(default)]
    pub grids: Option<Grids>,
    #[serde(default)]
    pub tolerances: Option<Tolerances>,
    pub output: OutputSpec,
}

/// A validated job, with every model and generator constructed.
#[derive(Debug, Clone)]
pub struct Job {
    pub command: Command,
    pub nominal: DistributionModel,
    pub nominal_label: String,
    pub alternatives: Vec<(String, DistributionModel)>,
    pub generators: Vec<(String, Generator)>,
    pub radius: Option<f64>,
    pub margin: Option<f64>,
    pub ybar: f64,
    pub alpha_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    pub kappa: Option<KappaRange>,
    pub solver: SolverConfig,
    pub output: OutputSpec,
}

impl Job {
    pub fn calibration_spec(&self) -> Result<CalibrationSpec, ConfigError> {
        CalibrationSpec::new(
            self.nominal,
            self.margin.unwrap_or(0.10),
            self.alpha_grid.clone(),
            self.theta_grid.clone(),
            self.ybar,
        )
        .map_err(|e| invalid("nominal", e))
    }
}

fn positive(field: &'static str, v: f64) -> Result<f64, ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(field, format!("{v} must be positive and finite")))
    }
}

fn above_one(field: &'static str, grid: &[f64]) -> Result<(), ConfigError> {
    if grid.is_empty() {
        return Err(invalid(field, "grid is empty"));
    }
    match grid.iter().find(|v| !(**v > 1.0 && v.is_finite())) {
        Some(v) => Err(invalid(field, format!("{v} must exceed 1"))),
        None => Ok(()),
    }
}

impl JobConfig {
    pub fn from_path(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    fn solver(&self) -> Result<SolverConfig, ConfigError> {
        let mut quad = QuadratureConfig::default();
        let mut solver = SolverConfig::default();
        if let Some(t) = &self.tolerances {
            if let Some(a) = t.abs {
                quad.abs_tol = positive("tolerances.abs", a)?;
            }
            if let Some(r) = t.rel {
                quad.rel_tol = positive("tolerances.rel", r)?;
            }
            if let Some(n) = t.max_subdivisions {
                quad.max_subdivisions = n;
            }
            if let Some(s) = t.solver {
                solver.tolerance = positive("tolerances.solver", s)?;
            }
        }
        quad.validate().map_err(|e| invalid("tolerances", e))?;
        solver.quadrature = quad;
        Ok(solver)
    }

    /// Checks every field the command needs and builds the models.
    pub fn validate(&self) -> Result<Job, ConfigError> {
        let cmd = self.command.name();
        let need = |field: &'static str| ConfigError::Missing { command: cmd, field };
        let nominal = self.nominal.build().map_err(|e| invalid("nominal", e))?;
        let grids = self.grids.clone().unwrap_or_default();
        let ybar = match self.ybar {
            Some(y) if !(y >= 1.0 && y.is_finite()) => return Err(invalid("ybar", format!("{y} must be at least 1"))),
            Some(y) => y,
            None => E,
        };

        let mut alternatives = Vec::new();
        let mut generators = Vec::new();
        let mut radius = None;
        let mut margin = None;
        let mut alpha_grid = Vec::new();
        let mut theta_grid = Vec::new();
        let mut kappa = None;

        let build_alt = |d: &ModelDescriptor| d.build().map(|m| (d.label(), m)).map_err(|e| invalid("alternative", e));
        let build_gen = |d: &GeneratorDescriptor| d.build(&nominal).map(|g| (d.label(), g));

        match self.command {
            Command::Classify => {}
            Command::Divergence => {
                alternatives.push(build_alt(self.alternative.as_ref().ok_or_else(|| need("alternative"))?)?);
                generators.push(build_gen(self.generator.as_ref().ok_or_else(|| need("generator"))?)?);
            }
            Command::VerdictMatrix => {
                let alts = self.alternatives.as_ref().ok_or_else(|| need("alternatives"))?;
                let gens = self.generators.as_ref().ok_or_else(|| need("generators"))?;
                if alts.is_empty() || gens.is_empty() {
                    return Err(invalid("alternatives", "verdict matrix needs at least one row and one column"));
                }
                alternatives = alts.iter().map(build_alt).collect::<Result<_, _>>()?;
                generators = gens.iter().map(build_gen).collect::<Result<_, _>>()?;
            }
            Command::WorstCase => {
                generators.push(build_gen(self.generator.as_ref().ok_or_else(|| need("generator"))?)?);
                radius = Some(positive("radius", self.radius.ok_or_else(|| need("radius"))?)?);
            }
            Command::Calibrate => {
                generators.push(build_gen(self.generator.as_ref().ok_or_else(|| need("generator"))?)?);
                let m = self.margin.ok_or_else(|| need("margin"))?;
                if !(m >= 0.0 && m.is_finite()) {
                    return Err(invalid("margin", format!("{m} must be nonnegative")));
                }
                margin = Some(m);
            }
            Command::Sweep => {
                nominal.phi_family().map_err(|e| invalid("nominal", e))?;
                theta_grid = grids.theta.clone().ok_or_else(|| need("grids.theta"))?;
                above_one("grids.theta", &theta_grid)?;
                let k = grids.kappa.clone().ok_or_else(|| need("grids.kappa"))?;
                positive("grids.kappa.from", k.from)?;
                positive("grids.kappa.to", k.to)?;
                if k.points == 0 || k.to < k.from {
                    return Err(invalid("grids.kappa", "need points >= 1 and from <= to"));
                }
                kappa = Some(k);
            }
            Command::Table1 => {
                let m = self.margin.ok_or_else(|| need("margin"))?;
                margin = Some(positive("margin", m)?);
                alpha_grid = grids.alpha.clone().ok_or_else(|| need("grids.alpha"))?;
                theta_grid = grids.theta.clone().ok_or_else(|| need("grids.theta"))?;
                above_one("grids.alpha", &alpha_grid)?;
                above_one("grids.theta", &theta_grid)?;
                nominal.phi_family().map_err(|e| invalid("nominal", e))?;
            }
        }

        Ok(Job {
            command: self.command,
            nominal,
            nominal_label: self.nominal.label(),
            alternatives,
            generators,
            radius,
            margin,
            ybar,
            alpha_grid,
            theta_grid,
            kappa,
            solver: self.solver()?,
            output: self.output.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE1: &str = r#"{
        "command": "table1",
        "nominal": {"family": "truncated-above", "p": 0.95,
                    "inner": {"family": "weibull", "shape": 0.4015, "scale": 0.6821}},
        "margin": 0.1,
        "grids": {"alpha": [1.1, 1.5, 2, 2.5, 3], "theta": [1.1, 1.5, 2, 2.5]},
        "output": {"path": "table1.csv"}
    }"#;

    #[test]
    fn table1_config_parses_and_validates() {
        let cfg = JobConfig::from_json(TABLE1).unwrap();
        assert_eq!(cfg.output.format, Format::Csv);
        let job = cfg.validate().unwrap();
        assert_eq!(job.alpha_grid.len(), 5);
        assert!((job.nominal.support_min() - 10.4878).abs() < 1e-3);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = TABLE1.replace("\"margin\"", "\"margn\"");
        assert!(matches!(JobConfig::from_json(&bad), Err(ConfigError::Parse(_))));
        let bad = TABLE1.replace("\"shape\": 0.4015", "\"shape\": 0.4015, \"extra\": 1");
        assert!(matches!(JobConfig::from_json(&bad), Err(ConfigError::Parse(_))));
    }

    #[test]
    fn missing_and_invalid_fields() {
        let no_margin = TABLE1.replace("\"margin\": 0.1,", "");
        let err = JobConfig::from_json(&no_margin).unwrap().validate().unwrap_err();
        assert!(matches!(err, ConfigError::Missing { field: "margin", .. }));
        let bad_shape = TABLE1.replace("0.4015", "1.5");
        assert!(matches!(JobConfig::from_json(&bad_shape).unwrap().validate(), Err(ConfigError::Invalid { .. })));
    }

    #[test]
    fn fphi_generator_needs_class_two_nominal() {
        let d = GeneratorDescriptor::Fphi { theta: 2.0, ybar: None, convention: YbarConvention::Fixed };
        assert!(d.build(&DistributionModel::exponential(1.0).unwrap()).is_err());
        let w = DistributionModel::weibull(0.4015, 0.6821).unwrap();
        assert!(d.build(&w).is_ok());
        let coupled = GeneratorDescriptor::Fphi { theta: 2.0, ybar: None, convention: YbarConvention::Coupled };
        match (d.build(&w).unwrap(), coupled.build(&w).unwrap()) {
            (Generator::FPhi(a), Generator::FPhi(b)) => assert!((a.ybar() - b.ybar()).abs() < 1e-12),
            _ => unreachable!(),
        }
    }
}
