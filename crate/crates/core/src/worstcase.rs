//! Worst-case expectations over a divergence ball.
//!
//! For `sup { E_η[X] : D_F(η | ν) ≤ κ }` the optimizer has density
//! `g(x) = (F′)⁻¹(α₁ + α₂x) f(x)`. The pair `(α₁, α₂)` is found by two nested
//! one-dimensional root finds:
//!
//! - inner: for fixed `α₂`, `α₁` normalizes `g` (`∫g` increases with `α₁`);
//! - outer: along that normalized curve, `α₂ > 0` hits the radius
//!   (`D` increases with `α₂`; each run checks this on its scan).
//!
//! The outer search runs in `log α₂` over `[1e-12, 1e2]`, first on a
//! coarse scan and then with Brent's method inside the bracket found.

use crate::distributions::{DistributionModel, Family, LogDensity, ModelError};
use crate::divergence::{self, DivergenceError, FPhiGenerator, Generator};
use crate::quadrature::{IntegralResult, QuadratureConfig, SemiInfinite, Status};
use crate::roots::{self, RootError, RootOptions};
use alloc::vec;
use alloc::vec::Vec;
use libm::{exp, fabs, log, pow};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorstCaseError {
    #[error("radius must be positive and finite (got {0})")]
    Radius(f64),
    #[error("the worst case is infinite: {0}")]
    InfiniteWorstCase(&'static str),
    #[error("generator does not fit the nominal model: {0}")]
    Incompatible(&'static str),
    #[error("no bracket for the {what} in [{lo}, {hi}]")]
    Bracket { what: &'static str, lo: f64, hi: f64 },
    #[error("the {what} integral did not converge ({status:?})")]
    Quadrature { what: &'static str, status: Status },
    #[error("root find failed: {0}")]
    Root(RootError),
    #[error("{0}")]
    Model(ModelError),
    #[error("{0}")]
    Generator(DivergenceError),
    #[error("target mean {target} is below the nominal mean {nominal}")]
    TargetBelowNominal { target: f64, nominal: f64 },
}

/// Floor on the absolute quadrature tolerance used for tiny radii.
const MIN_ABS_TOL: f64 = 1e-16;

/// Solver settings. Quadrature tolerances apply to every constraint
/// integral; `tolerance` bounds the normalization and radius residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub quadrature: QuadratureConfig,
    pub tolerance: f64,
    pub alpha2_min: f64,
    pub alpha2_max: f64,
    /// Scan points per decade of `α₂`.
    pub scan_density: usize,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            quadrature: QuadratureConfig::default(),
            tolerance: 1e-6,
            alpha2_min: 1e-12,
            alpha2_max: 1e2,
            scan_density: 2,
            max_iter: 200,
        }
    }
}

/// `sup E_η[X]` over `D_F(η | ν) ≤ κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorstCaseProblem {
    nominal: DistributionModel,
    generator: Generator,
    radius: f64,
}

impl WorstCaseProblem {
    pub fn new(nominal: DistributionModel, generator: Generator, radius: f64) -> Result<Self, WorstCaseError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(WorstCaseError::Radius(radius));
        }
        check_compatible(&nominal, &generator)?;
        Ok(Self { nominal, generator, radius })
    }

    pub fn nominal(&self) -> &DistributionModel {
        &self.nominal
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn solve(&self, cfg: &SolverConfig) -> Result<WorstCaseSolution, WorstCaseError> {
        let target = self.radius;
        let mut cfg = cfg.clone();
        // The radius must be resolved relative to its own size, but not
        // below what double precision can deliver.
        cfg.quadrature.abs_tol = cfg.quadrature.abs_tol.min((1e-4 * cfg.tolerance * target).max(MIN_ABS_TOL));
        let curve = Curve::new(&self.nominal, &self.generator, &cfg);
        let result = curve.solve_along(|p| p.divergence.value - target, |p| p.divergence.value)?;
        Ok(result)
    }
}

fn check_compatible(nominal: &DistributionModel, generator: &Generator) -> Result<(), WorstCaseError> {
    let heavy = matches!(
        nominal.family(),
        Family::Weibull { .. } | Family::GeneralizedLognormal { .. } | Family::Pareto { .. }
    );
    match generator {
        Generator::Kl if heavy => Err(WorstCaseError::InfiniteWorstCase(
            "a KL ball around a heavy-tailed nominal contains models with arbitrarily large means",
        )),
        Generator::FPhi(_) if nominal.phi_family().is_err() => {
            Err(WorstCaseError::Incompatible("F_Phi needs a Weibull or generalized lognormal nominal"))
        }
        _ => Ok(()),
    }
}

/// A solved worst case.
#[derive(Debug, Clone, PartialEq)]
pub struct WorstCaseSolution {
    pub alpha1: f64,
    pub alpha2: f64,
    pub worst_mean: f64,
    pub achieved_divergence: f64,
    /// `∫g - 1`.
    pub normalization_residual: f64,
    /// Normalization, divergence and mean integrals, in that order.
    pub quadrature_report: Vec<IntegralResult>,
    /// Outer iterations (scan points plus root-find steps).
    pub iterations: usize,
    /// Whether the divergence increased along every scanned `α₂`.
    pub monotone: bool,
}

impl WorstCaseSolution {
    pub fn density(&self, nominal: DistributionModel, generator: Generator) -> WorstCaseDensity {
        WorstCaseDensity::new(nominal, generator, self.alpha1, self.alpha2)
    }
}

/// `g(x) = (F′)⁻¹(α₁ + α₂x) f(x)` as a [`LogDensity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorstCaseDensity {
    pub nominal: DistributionModel,
    pub generator: Generator,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl WorstCaseDensity {
    pub fn new(nominal: DistributionModel, generator: Generator, alpha1: f64, alpha2: f64) -> Self {
        Self { nominal, generator, alpha1, alpha2 }
    }

    /// `x` at which `α₁ + α₂x` crosses `z`.
    fn x_at(&self, z: f64) -> f64 {
        (z - self.alpha1) / self.alpha2
    }

    /// `ln (g/f)(x)`.
    pub fn ln_ratio(&self, x: f64) -> f64 {
        self.generator.ln_derivative_inverse(self.alpha1 + self.alpha2 * x)
    }

    pub fn density(&self, x: f64) -> f64 {
        exp(self.ln_density(x))
    }
}

impl LogDensity for WorstCaseDensity {
    fn support_min(&self) -> f64 {
        let lo = self.nominal.support_min();
        match self.generator {
            Generator::Alpha(_) => lo.max(self.x_at(0.0)),
            _ => lo,
        }
    }

    fn ln_density(&self, x: f64) -> f64 {
        let lf = self.nominal.ln_density(x);
        if lf == f64::NEG_INFINITY {
            return lf;
        }
        let lr = self.ln_ratio(x);
        if lr == f64::NEG_INFINITY {
            lr
        } else {
            lr + lf
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self.generator.inverse_kinks() {
            Some(z) => {
                let x = self.x_at(z);
                if x.is_finite() && x > self.nominal.support_min() {
                    vec![x]
                } else {
                    Vec::new()
                }
            }
            None => Vec::new(),
        }
    }
}

/// `g(x) = (F′)⁻¹(α₁ + α₂x) f(x)` at a point.
pub fn worst_case_density(generator: &Generator, nominal: &DistributionModel, alpha1: f64, alpha2: f64, x: f64) -> f64 {
    WorstCaseDensity::new(*nominal, *generator, alpha1, alpha2).density(x)
}

fn integrate_density<D: LogDensity>(d: &D, weight_x: bool, cfg: &QuadratureConfig) -> IntegralResult {
    let f = |x: f64| {
        let ld = d.ln_density(x);
        if ld == f64::NEG_INFINITY {
            0.0
        } else if weight_x {
            exp(ld + log(x))
        } else {
            exp(ld)
        }
    };
    SemiInfinite::run(&f, d.support_min(), &d.breakpoints(), cfg).result
}

/// One point of the normalized curve `α₂ ↦ (α₁(α₂), α₂)`.
#[derive(Debug, Clone)]
struct CurvePoint {
    alpha1: f64,
    alpha2: f64,
    norm: IntegralResult,
    divergence: IntegralResult,
    mean: IntegralResult,
}

enum CurveFailure {
    /// The constraint integrals blow up: the point lies beyond every ball.
    Unbounded,
    Error(WorstCaseError),
}

struct Curve<'a> {
    nominal: &'a DistributionModel,
    generator: &'a Generator,
    cfg: &'a SolverConfig,
    /// Nominal mean, used to center the first `α₁` bracket.
    mean_hint: f64,
}

impl<'a> Curve<'a> {
    fn new(nominal: &'a DistributionModel, generator: &'a Generator, cfg: &'a SolverConfig) -> Self {
        let m = nominal.moment(1.0, &cfg.quadrature);
        let mean_hint = if m.is_converged() { m.value } else { 1.0 };
        Self { nominal, generator, cfg, mean_hint }
    }

    fn density(&self, alpha1: f64, alpha2: f64) -> WorstCaseDensity {
        WorstCaseDensity::new(*self.nominal, *self.generator, alpha1, alpha2)
    }

    /// `ln ∫g` for the given multipliers; `None` once the integral no
    /// longer converges.
    fn ln_norm(&self, alpha1: f64, alpha2: f64) -> Option<(f64, IntegralResult)> {
        let r = integrate_density(&self.density(alpha1, alpha2), false, &self.cfg.quadrature);
        if r.status != Status::Converged {
            return None;
        }
        Some((if r.value > 0.0 { log(r.value) } else { f64::NEG_INFINITY }, r))
    }

    fn alpha1_for(&self, alpha2: f64) -> Result<(f64, IntegralResult), CurveFailure> {
        let center = self.generator.slope_at_one() - alpha2 * self.mean_hint;
        let mut last = None;
        let mut h = |a1: f64| match self.ln_norm(a1, alpha2) {
            Some((v, r)) => {
                last = Some((a1, r));
                v
            }
            None => f64::INFINITY,
        };
        let (lo, hi, flo, fhi) =
            roots::expand_increasing(&mut h, center - 0.5, center + 0.5, 80).map_err(|e| match e {
                RootError::NotBracketed { f_lo, .. } if f_lo == f64::INFINITY => CurveFailure::Unbounded,
                other => CurveFailure::Error(WorstCaseError::Root(other)),
            })?;
        let opts = RootOptions { xtol: 1e-15, rtol: 4.0 * f64::EPSILON, ftol: 1e-14, max_iter: self.cfg.max_iter };
        let root = if fhi.is_finite() {
            roots::brent_with_values(&mut h, lo, hi, flo, fhi, opts)
        } else {
            roots::bisect(&mut h, lo, hi, opts)
        }
        .map_err(|e| CurveFailure::Error(WorstCaseError::Root(e)))?;
        match last {
            Some((a1, r)) if a1 == root.x => Ok((root.x, r)),
            _ => self.ln_norm(root.x, alpha2).map(|(_, r)| (root.x, r)).ok_or(CurveFailure::Unbounded),
        }
    }

    fn point(&self, alpha2: f64) -> Result<CurvePoint, CurveFailure> {
        let (alpha1, norm) = self.alpha1_for(alpha2)?;
        let g = self.density(alpha1, alpha2);
        let divergence = divergence::divergence(self.generator, &g, self.nominal, &self.cfg.quadrature);
        if divergence.status != Status::Converged {
            return Err(CurveFailure::Unbounded);
        }
        let mean = integrate_density(&g, true, &self.cfg.quadrature);
        if mean.status != Status::Converged {
            return Err(CurveFailure::Unbounded);
        }
        Ok(CurvePoint { alpha1, alpha2, norm, divergence, mean })
    }

    /// Finds `α₂` with `residual(point) = 0`, where `residual` increases with
    /// `α₂`. `monitor` is the quantity checked for monotonicity on the scan.
    fn solve_along<R, M>(&self, residual: R, monitor: M) -> Result<WorstCaseSolution, WorstCaseError>
    where
        R: Fn(&CurvePoint) -> f64,
        M: Fn(&CurvePoint) -> f64,
    {
        let cfg = self.cfg;
        let l_min = log(cfg.alpha2_min);
        let l_max = log(cfg.alpha2_max);
        let step = core::f64::consts::LN_10 / cfg.scan_density.max(1) as f64;
        let mut iterations = 0;
        let mut monotone = true;
        let mut prev: Option<(f64, f64, CurvePoint)> = None;
        let mut last_monitor = f64::NEG_INFINITY;

        let eval = |la: f64| -> Result<Option<CurvePoint>, WorstCaseError> {
            match self.point(exp(la)) {
                Ok(p) => Ok(Some(p)),
                Err(CurveFailure::Unbounded) => Ok(None),
                Err(CurveFailure::Error(e)) => Err(e),
            }
        };

        // Coarse scan for the first sign change.
        let mut la = l_min;
        let bracket = loop {
            iterations += 1;
            let point = eval(la)?;
            match point {
                Some(p) => {
                    let m = monitor(&p);
                    let slack = 10.0 * (cfg.quadrature.abs_tol + cfg.quadrature.rel_tol * fabs(m));
                    if m < last_monitor - slack {
                        monotone = false;
                    }
                    last_monitor = m;
                    let r = residual(&p);
                    if r >= 0.0 {
                        break (prev.take(), Some((la, r, p)));
                    }
                    prev = Some((la, r, p));
                }
                None => break (prev.take(), None),
            }
            if la >= l_max {
                return Err(WorstCaseError::Bracket { what: "alpha2", lo: cfg.alpha2_min, hi: cfg.alpha2_max });
            }
            la = (la + step).min(l_max);
        };

        let (lo, hi) = match bracket {
            (Some(lo), hi) => (lo, hi),
            (None, _) => {
                return Err(WorstCaseError::Bracket { what: "alpha2", lo: cfg.alpha2_min, hi: exp(la) });
            }
        };
        let (mut l_lo, mut r_lo, lo_point) = lo;
        let mut best = lo_point;
        // Beyond the feasible region (divergent integrals), shrink by bisection
        // until the upper end is a finite point.
        let (l_hi, r_hi, hi_point) = match hi {
            Some(h) => h,
            None => {
                let mut l_hi = la;
                loop {
                    iterations += 1;
                    if iterations > cfg.max_iter {
                        return Err(WorstCaseError::Bracket { what: "alpha2", lo: exp(l_lo), hi: exp(l_hi) });
                    }
                    let mid = 0.5 * (l_lo + l_hi);
                    match eval(mid)? {
                        Some(p) => {
                            let r = residual(&p);
                            if r >= 0.0 {
                                break (mid, r, p);
                            }
                            l_lo = mid;
                            r_lo = r;
                            best = p;
                        }
                        None => l_hi = mid,
                    }
                    if l_hi - l_lo < 1e-13 {
                        return Err(WorstCaseError::Bracket { what: "alpha2", lo: exp(l_lo), hi: exp(l_hi) });
                    }
                }
            }
        };

        // Brent (or bisection when monotonicity failed) inside the bracket.
        let scale = fabs(r_hi).max(fabs(r_lo)).max(1e-300);
        let mut points: Vec<CurvePoint> = Vec::new();
        let mut failure: Option<WorstCaseError> = None;
        let mut g = |la: f64| -> f64 {
            iterations += 1;
            match eval(la) {
                Ok(Some(p)) => {
                    let r = residual(&p);
                    points.push(p);
                    r
                }
                Ok(None) => f64::INFINITY,
                Err(e) => {
                    failure = Some(e);
                    f64::NAN
                }
            }
        };
        let target_tol = cfg.tolerance * 1e-3;
        let opts = RootOptions { xtol: 1e-12, rtol: 0.0, ftol: target_tol * scale.min(1.0), max_iter: cfg.max_iter };
        let root = if monotone {
            roots::brent_with_values(&mut g, l_lo, l_hi, r_lo, r_hi, opts)
        } else {
            roots::bisect(&mut g, l_lo, l_hi, opts)
        };
        if let Some(e) = failure {
            return Err(e);
        }
        let root = root.map_err(WorstCaseError::Root)?;
        let chosen = if root.x == l_lo {
            best
        } else if root.x == l_hi {
            hi_point
        } else {
            match points.into_iter().rev().find(|p| log(p.alpha2) == root.x) {
                Some(p) => p,
                None => match eval(root.x)? {
                    Some(p) => p,
                    None => return Err(WorstCaseError::Quadrature { what: "divergence", status: Status::Diverged }),
                },
            }
        };
        Ok(finish(chosen, iterations, monotone))
    }
}

fn finish(p: CurvePoint, iterations: usize, monotone: bool) -> WorstCaseSolution {
    WorstCaseSolution {
        alpha1: p.alpha1,
        alpha2: p.alpha2,
        worst_mean: p.mean.value,
        achieved_divergence: p.divergence.value,
        normalization_residual: p.norm.value - 1.0,
        quadrature_report: vec![p.norm, p.divergence, p.mean],
        iterations,
        monotone,
    }
}

/// Worst case whose mean equals `target_mean`, found by searching along the
/// normalized curve in `α₂`; the radius is whatever divergence that
/// density has.
pub fn solve_for_mean(
    nominal: &DistributionModel,
    generator: &Generator,
    target_mean: f64,
    cfg: &SolverConfig,
) -> Result<WorstCaseSolution, WorstCaseError> {
    check_compatible(nominal, generator)?;
    let nominal_mean = nominal.moment(1.0, &cfg.quadrature);
    if !nominal_mean.is_converged() {
        return Err(WorstCaseError::Quadrature { what: "nominal mean", status: nominal_mean.status });
    }
    if target_mean < nominal_mean.value {
        return Err(WorstCaseError::TargetBelowNominal { target: target_mean, nominal: nominal_mean.value });
    }
    let curve = Curve::new(nominal, generator, cfg);
    curve.solve_along(|p| p.mean.value - target_mean, |p| p.mean.value)
}

/// Exponential tilting: the KL worst case for an exponential nominal of rate
/// `rate` is again exponential. Returns `(worst mean, tilted rate)`.
pub fn kl_tilt_oracle(rate: f64, kappa: f64) -> (f64, f64) {
    if kappa <= 0.0 {
        return (1.0 / rate, rate);
    }
    // With s = rate/λ′ > 1: s - 1 - ln s = κ.
    let h = |s: f64| s - 1.0 - log(s) - kappa;
    let mut hi = 2.0;
    while h(hi) < 0.0 {
        hi *= 2.0;
    }
    let opts = RootOptions { xtol: 1e-15, rtol: 4.0 * f64::EPSILON, ftol: 0.0, max_iter: 400 };
    let s = roots::bisect(h, 1.0, hi, opts).map(|r| r.x).unwrap_or(f64::NAN);
    let tilted = rate / s;
    (1.0 / tilted, tilted)
}

/// Constant used in the Weibull asymptotic equivalent
/// `f(x) exp(((α₁ + α₂x)/C)^{k/θ})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeibullConstant {
    /// `C = a λ^θ`.
    #[default]
    ScalePowerTheta,
    /// `C = a λ`.
    Scale,
}

/// Closed-form tail equivalent of the F_Φ worst-case density.
pub fn asymptotic_equivalent(
    generator: &FPhiGenerator,
    nominal: &DistributionModel,
    alpha1: f64,
    alpha2: f64,
    x: f64,
    constant: WeibullConstant,
) -> Result<f64, WorstCaseError> {
    ln_asymptotic_equivalent(generator, nominal, alpha1, alpha2, x, constant).map(exp)
}

/// Logarithm of [`asymptotic_equivalent`], finite far beyond the point
/// where the density itself underflows.
pub fn ln_asymptotic_equivalent(
    generator: &FPhiGenerator,
    nominal: &DistributionModel,
    alpha1: f64,
    alpha2: f64,
    x: f64,
    constant: WeibullConstant,
) -> Result<f64, WorstCaseError> {
    let z = alpha1 + alpha2 * x;
    let a = generator.a();
    let theta = generator.theta();
    let lf = nominal.ln_density(x);
    let log_ratio = match nominal.family() {
        Family::Weibull { shape, scale } => {
            let c = match constant {
                WeibullConstant::ScalePowerTheta => a * pow(scale, theta),
                WeibullConstant::Scale => a * scale,
            };
            pow(z / c, shape / theta)
        }
        Family::GeneralizedLognormal { r: 2.0, sigma, .. } => {
            let l = log(z / a);
            l * l / (2.0 * sigma * sigma * theta * theta)
        }
        _ => return Err(WorstCaseError::Incompatible("asymptotic equivalent needs a Weibull or lognormal nominal")),
    };
    Ok(lf + log_ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::PhiFamily;

    #[test]
    fn tilt_oracle_known_point() {
        let kappa = log(0.5) + 1.0;
        let (m, rate) = kl_tilt_oracle(1.0, kappa);
        assert!((rate - 0.5).abs() < 1e-12);
        assert!((m - 2.0).abs() < 1e-12);
        let (m2, _) = kl_tilt_oracle(2.0, kappa);
        assert!((m2 - 1.0).abs() < 1e-12);
        let (m0, r0) = kl_tilt_oracle(1.0, 1e-14);
        assert!((r0 - 1.0).abs() < 1e-6 && (m0 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn kl_density_forms() {
        let nu = DistributionModel::exponential(1.0).unwrap();
        for &x in &[0.0, 0.5, 3.0, 20.0] {
            let g = worst_case_density(&Generator::Kl, &nu, 1.0, 0.0, x);
            assert!((g - nu.density(x)).abs() < 1e-15);
            let (a1, a2) = (0.3, 0.4);
            let tilted = worst_case_density(&Generator::Kl, &nu, a1, a2, x);
            let oracle = exp(a1 - 1.0) * exp(-(1.0 - a2) * x);
            assert!((tilted - oracle).abs() < 1e-14 * oracle.max(1e-300));
        }
        let a2 = Generator::alpha(2.0).unwrap();
        for &x in &[0.5, 1.0, 4.0] {
            let g = worst_case_density(&a2, &nu, -1.0, 1.0, x);
            let oracle = (x - 1.0).max(0.0) * nu.density(x);
            assert!((g - oracle).abs() < 1e-15);
        }
    }

    #[test]
    fn kl_solve_matches_tilting() {
        let nu = DistributionModel::exponential(1.0).unwrap();
        let kappa = log(0.5) + 1.0;
        let sol = WorstCaseProblem::new(nu, Generator::Kl, kappa).unwrap().solve(&SolverConfig::default()).unwrap();
        assert!((sol.worst_mean - 2.0).abs() < 1e-4, "{sol:?}");
        assert!((sol.alpha2 - 0.5).abs() < 1e-4);
        assert!(sol.monotone);
    }

    #[test]
    fn kl_refused_for_heavy_tails() {
        let w = DistributionModel::weibull(0.5, 1.0).unwrap();
        assert!(matches!(WorstCaseProblem::new(w, Generator::Kl, 0.1), Err(WorstCaseError::InfiniteWorstCase(_))));
        let e = DistributionModel::exponential(1.0).unwrap();
        let g = Generator::fphi(PhiFamily::Weibull { shape: 0.5, scale: 1.0 }, 2.0, core::f64::consts::E).unwrap();
        assert!(matches!(WorstCaseProblem::new(e, g, 0.1), Err(WorstCaseError::Incompatible(_))));
        assert!(matches!(WorstCaseProblem::new(e, Generator::Kl, 0.0), Err(WorstCaseError::Radius(_))));
    }

    #[test]
    fn tiny_radius_stays_near_nominal() {
        let nu = DistributionModel::exponential(1.0).unwrap();
        let (oracle, _) = kl_tilt_oracle(1.0, 1e-8);
        let sol = WorstCaseProblem::new(nu, Generator::Kl, 1e-8).unwrap().solve(&SolverConfig::default()).unwrap();
        assert!((sol.worst_mean / oracle - 1.0).abs() < 1e-6, "{} vs {oracle}", sol.worst_mean);

        let w = DistributionModel::weibull(0.4015, 0.6821).unwrap().truncated_above(0.95).unwrap();
        let g = Generator::fphi(w.phi_family().unwrap(), 2.0, core::f64::consts::E).unwrap();
        let sol = WorstCaseProblem::new(w, g, 1e-8).unwrap().solve(&SolverConfig::default()).unwrap();
        assert!((sol.achieved_divergence / 1e-8 - 1.0).abs() < 1e-6);
        assert!(sol.worst_mean > 24.16 && sol.worst_mean < 24.18, "{}", sol.worst_mean);
    }
}
