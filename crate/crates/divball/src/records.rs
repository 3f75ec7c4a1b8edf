//! Serializable result records.

use divball_core::calibrate::{MarginCell, SweepRecord};
use divball_core::quadrature::IntegralResult;
use divball_core::tailcheck::{TailClass, TailReport, Verdict};
use divball_core::WorstCaseSolution;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralRecord {
    pub value: f64,
    pub error_estimate: f64,
    pub status: String,
    pub detail: String,
    pub evaluations: usize,
}

impl From<&IntegralResult> for IntegralRecord {
    fn from(r: &IntegralResult) -> Self {
        Self {
            value: r.value,
            error_estimate: r.error_estimate,
            status: format!("{:?}", r.status),
            detail: format!("{:?}", r.detail),
            evaluations: r.evaluations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub alpha1: f64,
    pub alpha2: f64,
    pub worst_mean: f64,
    pub achieved_divergence: f64,
    pub normalization_residual: f64,
    pub quadrature_report: Vec<IntegralRecord>,
    pub iterations: usize,
    pub monotone: bool,
}

impl From<&WorstCaseSolution> for SolutionRecord {
    fn from(s: &WorstCaseSolution) -> Self {
        Self {
            alpha1: s.alpha1,
            alpha2: s.alpha2,
            worst_mean: s.worst_mean,
            achieved_divergence: s.achieved_divergence,
            normalization_residual: s.normalization_residual,
            quadrature_report: s.quadrature_report.iter().map(IntegralRecord::from).collect(),
            iterations: s.iterations,
            monotone: s.monotone,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub model: String,
    pub tail_class: String,
    pub degree: Option<f64>,
    pub lim_phi_over_x: f64,
    pub lim_phi_over_logx: f64,
}

impl ClassifyRecord {
    pub fn new(model: String, rep: &TailReport) -> Self {
        let (tail_class, degree) = match rep.tail_class {
            TailClass::I => ("i", None),
            TailClass::II => ("ii", None),
            TailClass::III { degree } => ("iii", Some(degree)),
        };
        Self {
            model,
            tail_class: tail_class.to_string(),
            degree,
            lim_phi_over_x: rep.lim_phi_over_x,
            lim_phi_over_logx: rep.lim_phi_over_logx,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceRecord {
    pub generator: String,
    pub alternative: String,
    pub nominal: String,
    pub result: IntegralRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub alternative: String,
    pub generator: String,
    pub predicted: String,
    pub numeric: String,
    /// False only when the numeric status is decisive and disagrees.
    pub agree: bool,
    pub divergence: IntegralRecord,
}

impl VerdictRecord {
    pub fn new(alternative: String, generator: String, predicted: Verdict, numeric: &IntegralResult) -> Self {
        let num = Verdict::from_status(numeric.status);
        Self {
            alternative,
            generator,
            predicted: predicted.as_str().to_string(),
            numeric: num.as_str().to_string(),
            agree: num == Verdict::Inconclusive || num == predicted,
            divergence: numeric.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstCaseRecord {
    pub nominal: String,
    pub generator: String,
    pub radius: f64,
    pub nominal_mean: f64,
    pub solution: SolutionRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrateRecord {
    pub nominal: String,
    pub generator: String,
    pub margin: f64,
    pub nominal_mean: f64,
    pub kappa: f64,
    pub solution: Option<SolutionRecord>,
}

/// One line of long-format plot data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub theta: f64,
    pub kappa: f64,
    pub worst_mean: Option<f64>,
}

impl From<&SweepRecord> for PlotRow {
    fn from(r: &SweepRecord) -> Self {
        Self { theta: r.theta, kappa: r.kappa, worst_mean: r.worst_mean() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPointRecord {
    pub theta: f64,
    pub kappa: f64,
    pub solution: Option<SolutionRecord>,
    pub error: Option<String>,
}

impl From<&SweepRecord> for SweepPointRecord {
    fn from(r: &SweepRecord) -> Self {
        let (solution, error) = match &r.result {
            Ok(s) => (Some(s.into()), None),
            Err(e) => (None, Some(e.to_string())),
        };
        Self { theta: r.theta, kappa: r.kappa, solution, error }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub theta: f64,
    pub alpha: f64,
    pub excess_percent: Option<f64>,
    pub kappa_alpha: Option<f64>,
    pub kappa_fphi: Option<f64>,
    pub alpha_worst_mean: Option<f64>,
    pub fphi_worst_mean: Option<f64>,
    pub error: Option<String>,
}

impl CellRecord {
    pub fn new<E: ToString>(theta: f64, alpha: f64, cell: &Result<MarginCell, E>) -> Self {
        match cell {
            Ok(c) => Self {
                theta,
                alpha,
                excess_percent: Some(c.excess_percent),
                kappa_alpha: Some(c.kappa_alpha),
                kappa_fphi: Some(c.kappa_fphi),
                alpha_worst_mean: Some(c.alpha_worst_mean),
                fphi_worst_mean: Some(c.fphi_worst_mean),
                error: None,
            },
            Err(e) => Self {
                theta,
                alpha,
                excess_percent: None,
                kappa_alpha: None,
                kappa_fphi: None,
                alpha_worst_mean: None,
                fphi_worst_mean: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    pub nominal: String,
    pub nominal_mean: f64,
    pub margin: f64,
    pub thetas: Vec<f64>,
    pub alphas: Vec<f64>,
    pub cells: Vec<CellRecord>,
}
