//! Reference and alternative models.
//!
//! Every model is kept in exponential form `f(x) = exp(-φ(x))`, with `φ`
//! evaluated in closed form so that ratios of densities can be taken in log
//! space far out in the tail, where the densities themselves underflow.
//!
//! | Family | Density | Tail class |
//! |--------|---------|------------|
//! | Exponential(λ) | λ e^{-λx} | (i) |
//! | HalfGaussian(s) | 2 N(0, s²) on [0, ∞) | (i) |
//! | Weibull(k < 1, λ) | (k/λ)(x/λ)^{k-1} e^{-(x/λ)^k} | (ii) |
//! | GeneralizedLognormal(r > 1, σ, μ) | exp(-\|log x - μ\|^r / (rσ^r)) / (Z x) | (ii) |
//! | Pareto(c, x_m) | c x_m^c x^{-c-1} on [x_m, ∞) | (iii) |
//!
//! with `Z = 2 r^{1/r} σ Γ(1 + 1/r)`. Any model can be truncated above one
//! of its quantiles; the truncated density is renormalized.

use crate::quadrature::{integrate_semi_infinite, IntegralResult, QuadratureConfig};
use crate::roots::{self, RootError, RootOptions};
use crate::special::{gamma_p, ln_erfc, ln_gamma, ln_gamma_q, LN_SQRT_2PI};
use alloc::vec::Vec;
use core::f64::consts::{LN_2, SQRT_2};
use libm::{erf, exp, expm1, fabs, log, log1p, pow};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },
    #[error("density is zero at x = {x}, so φ(x) is undefined")]
    ZeroDensity { x: f64 },
    #[error("probability {p} outside (0, 1)")]
    Probability { p: f64 },
    #[error("quantile search failed: {0}")]
    Quantile(RootError),
    #[error("{0} is not a class (ii) model; no Φ function available")]
    NotClassTwo(&'static str),
}

/// Anything with a log-density on `[support_min, ∞)`.
pub trait LogDensity {
    fn support_min(&self) -> f64;
    /// `ln` of the density; `-∞` where the density vanishes.
    fn ln_density(&self, x: f64) -> f64;
    /// Interior points where the density is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// The base parametric families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Exponential { rate: f64 },
    HalfGaussian { scale: f64 },
    Weibull { shape: f64, scale: f64 },
    GeneralizedLognormal { r: f64, sigma: f64, mu: f64 },
    Pareto { tail: f64, scale: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Exponential { .. } => "exponential",
            Family::HalfGaussian { .. } => "half-gaussian",
            Family::Weibull { .. } => "weibull",
            Family::GeneralizedLognormal { .. } => "generalized-lognormal",
            Family::Pareto { .. } => "pareto",
        }
    }

    fn validate(&self) -> Result<(), ModelError> {
        fn positive(name: &'static str, v: f64) -> Result<(), ModelError> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(ModelError::InvalidParameter { name, value: v, reason: "must be positive and finite" })
            }
        }
        match *self {
            Family::Exponential { rate } => positive("rate", rate),
            Family::HalfGaussian { scale } => positive("scale", scale),
            Family::Weibull { shape, scale } => {
                positive("scale", scale)?;
                if !(shape > 0.0 && shape < 1.0) {
                    return Err(ModelError::InvalidParameter {
                        name: "shape",
                        value: shape,
                        reason: "must lie in (0, 1); shapes ≥ 1 are light-tailed",
                    });
                }
                Ok(())
            }
            Family::GeneralizedLognormal { r, sigma, mu } => {
                positive("sigma", sigma)?;
                if !(r > 1.0 && r.is_finite()) {
                    return Err(ModelError::InvalidParameter { name: "r", value: r, reason: "must exceed 1" });
                }
                if !mu.is_finite() {
                    return Err(ModelError::InvalidParameter { name: "mu", value: mu, reason: "must be finite" });
                }
                Ok(())
            }
            Family::Pareto { tail, scale } => {
                positive("scale", scale)?;
                if !(tail > 1.0 && tail.is_finite()) {
                    return Err(ModelError::InvalidParameter { name: "tail", value: tail, reason: "must exceed 1" });
                }
                Ok(())
            }
        }
    }

    fn support_min(&self) -> f64 {
        match *self {
            Family::Pareto { scale, .. } => scale,
            _ => 0.0,
        }
    }

    fn gl_norm(r: f64, sigma: f64) -> f64 {
        // ln Z, Z = 2 r^{1/r} σ Γ(1 + 1/r)
        LN_2 + log(r) / r + log(sigma) + ln_gamma(1.0 + 1.0 / r)
    }

    /// `φ(x) = -ln f(x)`; `+∞` where the density vanishes.
    fn phi(&self, x: f64) -> f64 {
        if x < self.support_min() || x.is_nan() {
            return f64::INFINITY;
        }
        match *self {
            Family::Exponential { rate } => rate * x - log(rate),
            Family::HalfGaussian { scale } => {
                let z = x / scale;
                0.5 * z * z + LN_SQRT_2PI + log(scale) - LN_2
            }
            Family::Weibull { shape, scale } => {
                let z = x / scale;
                pow(z, shape) - log(shape / scale) - (shape - 1.0) * log(z)
            }
            Family::GeneralizedLognormal { r, sigma, mu } => {
                if x <= 0.0 {
                    return f64::INFINITY;
                }
                let lx = log(x);
                pow(fabs(lx - mu), r) / (r * pow(sigma, r)) + lx + Self::gl_norm(r, sigma)
            }
            Family::Pareto { tail, scale } => (tail + 1.0) * log(x) - log(tail) - tail * log(scale),
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= self.support_min() {
            return 0.0;
        }
        match *self {
            Family::Exponential { rate } => -expm1(-rate * x),
            Family::HalfGaussian { scale } => erf(x / (scale * SQRT_2)),
            Family::Weibull { shape, scale } => -expm1(-pow(x / scale, shape)),
            Family::GeneralizedLognormal { r, sigma, mu } => {
                let u = log(x) - mu;
                let w = pow(fabs(u), r) / (r * pow(sigma, r));
                let half = 0.5 * gamma_p(1.0 / r, w);
                if u >= 0.0 {
                    0.5 + half
                } else {
                    0.5 - half
                }
            }
            Family::Pareto { tail, scale } => -expm1(tail * log(scale / x)),
        }
    }

    /// `ln(1 - CDF(x))`, finite far into the tail.
    fn ln_sf(&self, x: f64) -> f64 {
        if x <= self.support_min() {
            return 0.0;
        }
        match *self {
            Family::Exponential { rate } => -rate * x,
            Family::HalfGaussian { scale } => ln_erfc(x / (scale * SQRT_2)),
            Family::Weibull { shape, scale } => -pow(x / scale, shape),
            Family::GeneralizedLognormal { r, sigma, mu } => {
                let u = log(x) - mu;
                let w = pow(fabs(u), r) / (r * pow(sigma, r));
                if u >= 0.0 {
                    -LN_2 + ln_gamma_q(1.0 / r, w)
                } else {
                    log(0.5 + 0.5 * gamma_p(1.0 / r, w))
                }
            }
            Family::Pareto { tail, scale } => tail * log(scale / x),
        }
    }

    /// Smallest `x` with `ln S(x) = ln_s` (inverse survival function).
    fn quantile_ln_sf(&self, ln_s: f64) -> Result<f64, ModelError> {
        match *self {
            Family::Exponential { rate } => Ok(-ln_s / rate),
            Family::Weibull { shape, scale } => Ok(scale * pow(-ln_s, 1.0 / shape)),
            Family::Pareto { tail, scale } => Ok(scale * exp(-ln_s / tail)),
            Family::HalfGaussian { .. } | Family::GeneralizedLognormal { .. } => {
                // Root-find in log x; ln S is decreasing.
                let g = |lx: f64| self.ln_sf(exp(lx)) - ln_s;
                let center = match *self {
                    Family::HalfGaussian { scale } => log(scale),
                    Family::GeneralizedLognormal { mu, .. } => mu,
                    _ => unreachable!(),
                };
                let (lo, hi, flo, fhi) = roots::expand_increasing(|lx| -g(lx), center - 1.0, center + 1.0, 200)
                    .map_err(ModelError::Quantile)?;
                let opts = RootOptions { xtol: 1e-15, rtol: 1e-15, ..RootOptions::default() };
                let root =
                    roots::brent_with_values(|lx| -g(lx), lo, hi, flo, fhi, opts).map_err(ModelError::Quantile)?;
                Ok(exp(root.x))
            }
        }
    }
}

/// Truncation above the `p`-quantile of a base family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub p: f64,
    pub threshold: f64,
    /// `ln S(threshold)`, the log of the retained mass.
    ln_mass: f64,
}

/// A validated reference or alternative model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionModel {
    family: Family,
    truncation: Option<Truncation>,
}

impl DistributionModel {
    pub fn new(family: Family) -> Result<Self, ModelError> {
        family.validate()?;
        Ok(Self { family, truncation: None })
    }

    pub fn exponential(rate: f64) -> Result<Self, ModelError> {
        Self::new(Family::Exponential { rate })
    }

    pub fn half_gaussian(scale: f64) -> Result<Self, ModelError> {
        Self::new(Family::HalfGaussian { scale })
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self, ModelError> {
        Self::new(Family::Weibull { shape, scale })
    }

    pub fn generalized_lognormal(r: f64, sigma: f64, mu: f64) -> Result<Self, ModelError> {
        Self::new(Family::GeneralizedLognormal { r, sigma, mu })
    }

    /// Lognormal with `log X ~ N(mu, sigma²)`.
    pub fn lognormal(sigma: f64, mu: f64) -> Result<Self, ModelError> {
        Self::generalized_lognormal(2.0, sigma, mu)
    }

    /// Pareto with tail index `tail` (density ∝ x^{-tail-1}) above `scale`.
    pub fn pareto(tail: f64, scale: f64) -> Result<Self, ModelError> {
        Self::new(Family::Pareto { tail, scale })
    }

    /// Conditions the model on exceeding its `p`-quantile. Truncating an
    /// already truncated model composes the two conditionings.
    pub fn truncated_above(self, p: f64) -> Result<Self, ModelError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(ModelError::Probability { p });
        }
        let ln_mass = match self.truncation {
            None => log1p(-p),
            Some(t) => t.ln_mass + log1p(-p),
        };
        let total_p = -expm1(ln_mass);
        let threshold = self.family.quantile_ln_sf(ln_mass)?;
        let ln_mass = self.family.ln_sf(threshold);
        Ok(Self { family: self.family, truncation: Some(Truncation { p: total_p, threshold, ln_mass }) })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn truncation(&self) -> Option<Truncation> {
        self.truncation
    }

    /// The untruncated base model.
    pub fn base(&self) -> DistributionModel {
        Self { family: self.family, truncation: None }
    }

    pub fn support_min(&self) -> f64 {
        match self.truncation {
            Some(t) => t.threshold,
            None => self.family.support_min(),
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        exp(self.ln_density_at(x))
    }

    fn ln_density_at(&self, x: f64) -> f64 {
        match self.truncation {
            Some(t) if x < t.threshold => f64::NEG_INFINITY,
            Some(t) => -self.family.phi(x) - t.ln_mass,
            None => -self.family.phi(x),
        }
    }

    /// `φ(x) = -ln f(x)` in closed form.
    pub fn log_density_exponent(&self, x: f64) -> Result<f64, ModelError> {
        let v = -self.ln_density_at(x);
        if v == f64::INFINITY || v.is_nan() {
            Err(ModelError::ZeroDensity { x })
        } else {
            Ok(v)
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self.truncation {
            None => self.family.cdf(x),
            Some(t) if x <= t.threshold => 0.0,
            Some(t) => -expm1(self.family.ln_sf(x) - t.ln_mass),
        }
    }

    /// `ln(1 - CDF(x))`.
    pub fn ln_survival(&self, x: f64) -> f64 {
        match self.truncation {
            None => self.family.ln_sf(x),
            Some(t) if x <= t.threshold => 0.0,
            Some(t) => self.family.ln_sf(x) - t.ln_mass,
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64, ModelError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(ModelError::Probability { p });
        }
        let ln_s = log1p(-p);
        match self.truncation {
            None => self.family.quantile_ln_sf(ln_s),
            Some(t) => self.family.quantile_ln_sf(ln_s + t.ln_mass),
        }
    }

    /// `∫ x^t f(x) dx`, with the quadrature's divergence detector deciding
    /// between a finite value and `+∞`.
    pub fn moment(&self, t: f64, cfg: &QuadratureConfig) -> IntegralResult {
        let lo = self.support_min();
        integrate_semi_infinite(
            |x| {
                let ld = self.ln_density_at(x);
                if ld == f64::NEG_INFINITY {
                    0.0
                } else if t == 0.0 {
                    exp(ld)
                } else {
                    exp(t * log(x) + ld)
                }
            },
            lo,
            cfg,
        )
    }

    /// Φ, Φ⁻¹ and (Φ⁻¹)′ for class (ii) models; truncation keeps the base
    /// model's functions.
    pub fn phi_family(&self) -> Result<PhiFamily, ModelError> {
        match self.family {
            Family::Weibull { shape, scale } => Ok(PhiFamily::Weibull { shape, scale }),
            Family::GeneralizedLognormal { r, sigma, .. } => Ok(PhiFamily::GeneralizedLognormal { r, sigma }),
            other => Err(ModelError::NotClassTwo(other.name())),
        }
    }
}

impl LogDensity for DistributionModel {
    fn support_min(&self) -> f64 {
        DistributionModel::support_min(self)
    }

    fn ln_density(&self, x: f64) -> f64 {
        self.ln_density_at(x)
    }
}

/// The monotone concave surrogate Φ of a class (ii) log-density, and the
/// inverse Φ⁻¹ used to build the F_Φ generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhiFamily {
    /// `Φ(x) = (x/λ)^k`, `Φ⁻¹(z) = λ z^{1/k}`.
    Weibull { shape: f64, scale: f64 },
    /// `Φ(x) = (log x)^r / (rσ^r)`, `Φ⁻¹(z) = exp(σ r^{1/r} z^{1/r})`.
    GeneralizedLognormal { r: f64, sigma: f64 },
    /// `Φ(x) = x`; with θ = 1 the F_Φ construction collapses to KL.
    Identity,
}

impl PhiFamily {
    /// Φ(x).
    pub fn phi(&self, x: f64) -> f64 {
        match *self {
            PhiFamily::Weibull { shape, scale } => pow(x / scale, shape),
            PhiFamily::GeneralizedLognormal { r, sigma } => {
                let lx = log(x);
                let v = pow(fabs(lx), r) / (r * pow(sigma, r));
                if lx < 0.0 {
                    -v
                } else {
                    v
                }
            }
            PhiFamily::Identity => x,
        }
    }

    /// `Φ(e^{lx})`, finite even when `e^{lx}` overflows.
    pub fn phi_of_ln(&self, lx: f64) -> f64 {
        match *self {
            PhiFamily::Weibull { shape, scale } => exp(shape * (lx - log(scale))),
            PhiFamily::GeneralizedLognormal { r, sigma } => {
                let v = pow(fabs(lx), r) / (r * pow(sigma, r));
                if lx < 0.0 {
                    -v
                } else {
                    v
                }
            }
            PhiFamily::Identity => exp(lx),
        }
    }

    /// Left end of the range where Φ is positive, increasing and concave.
    pub fn x_bar(&self) -> f64 {
        match *self {
            PhiFamily::Weibull { scale, .. } => scale,
            PhiFamily::GeneralizedLognormal { r, .. } => exp(r - 1.0),
            PhiFamily::Identity => 1.0,
        }
    }

    /// Φ(x̄): the smallest argument at which Φ⁻¹ is defined.
    pub fn phi_at_x_bar(&self) -> f64 {
        self.phi(self.x_bar())
    }

    /// `ln Φ⁻¹(z)`.
    pub fn ln_inverse(&self, z: f64) -> f64 {
        match *self {
            PhiFamily::Weibull { shape, scale } => log(scale) + log(z) / shape,
            PhiFamily::GeneralizedLognormal { r, sigma } => sigma * pow(r, 1.0 / r) * pow(z, 1.0 / r),
            PhiFamily::Identity => log(z),
        }
    }

    /// Φ⁻¹(z).
    pub fn inverse(&self, z: f64) -> f64 {
        exp(self.ln_inverse(z))
    }

    /// (Φ⁻¹)′(z).
    pub fn inverse_prime(&self, z: f64) -> f64 {
        self.inverse(z) * self.log_derivatives(z).0
    }

    /// `((Φ⁻¹)′/Φ⁻¹, (Φ⁻¹)″/Φ⁻¹)` at `z`.
    pub fn log_derivatives(&self, z: f64) -> (f64, f64) {
        match *self {
            PhiFamily::Weibull { shape, .. } => {
                let e = 1.0 / shape;
                (e / z, e * (e - 1.0) / (z * z))
            }
            PhiFamily::GeneralizedLognormal { r, sigma } => {
                let s = sigma * pow(r, 1.0 / r);
                let e = 1.0 / r;
                let d1 = s * e * pow(z, e - 1.0);
                let d2 = d1 * d1 + s * e * (e - 1.0) * pow(z, e - 2.0);
                (d1, d2)
            }
            PhiFamily::Identity => (1.0 / z, 0.0),
        }
    }
}
