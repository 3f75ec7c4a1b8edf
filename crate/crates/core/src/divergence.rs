//! Divergence generators and the divergence functional.
//!
//! A generator is a strictly convex `F` with `F(1) = 0`. Besides `F` itself
//! the solvers need `F′` and its inverse `(F′)⁻¹`; the inverse is always
//! returned in log form because worst-case densities are assembled as
//! `exp(ln (F′)⁻¹(z) + ln f(x))`.
//!
//! The F_Φ generator glues `y log y` on `(0, ȳ]` to `a·y·Φ⁻¹(log y)^θ + b`
//! on `(ȳ, ∞)`, with
//!
//! ```text
//! a = (1 + L) / (P(L)^θ + θ P(L)^{θ-1} P′(L)),   b = ȳ L - a ȳ P(L)^θ,
//! ```
//!
//! `L = log ȳ` and `P = Φ⁻¹`. Writing `ψ(u) = a P(u)^θ`, the big branch has
//! `F′(e^u) = ψ(u) + ψ′(u)`.

use crate::distributions::{LogDensity, PhiFamily};
use crate::quadrature::{Detail, IntegralResult, QuadratureConfig, SemiInfinite};
use crate::roots::{self, RootError, RootOptions};
use alloc::vec::Vec;
use core::f64::consts::E;
use libm::{exp, expm1, log, log1p};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum DivergenceError {
    #[error("alpha must exceed 1 (got {0})")]
    Alpha(f64),
    #[error("theta must exceed 1 (got {0})")]
    Theta(f64),
    #[error("ybar must be at least 1 (got {0})")]
    Ybar(f64),
    #[error("log(ybar) = {ln_ybar} lies below Phi(x_bar) = {phi_x_bar}, where Phi^-1 is undefined")]
    YbarBelowDomain { ln_ybar: f64, phi_x_bar: f64 },
    #[error("F_Phi coefficient a = {0} is not positive")]
    Coefficient(f64),
    #[error("inverting F': {0}")]
    Inverse(RootError),
}

/// `F(y) = (y^α - 1) / (α(α - 1))`, `α > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaGenerator {
    alpha: f64,
}

impl AlphaGenerator {
    pub fn new(alpha: f64) -> Result<Self, DivergenceError> {
        if alpha > 1.0 && alpha.is_finite() {
            Ok(Self { alpha })
        } else {
            Err(DivergenceError::Alpha(alpha))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// The F_Φ generator with its derived coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FPhiGenerator {
    phi: PhiFamily,
    theta: f64,
    ybar: f64,
    ln_ybar: f64,
    a: f64,
    b: f64,
}

/// `(a, b)` from `P(L)`, `P′(L)`, θ and ȳ.
pub fn fphi_coefficients_raw(p: f64, p_prime: f64, theta: f64, ybar: f64) -> (f64, f64) {
    let l = log(ybar);
    let pt = libm::pow(p, theta);
    let a = (1.0 + l) / (pt + theta * libm::pow(p, theta - 1.0) * p_prime);
    let b = ybar * l - a * ybar * pt;
    (a, b)
}

/// `(a, b)` for a Φ family, θ and ȳ.
pub fn fphi_coefficients(phi: PhiFamily, theta: f64, ybar: f64) -> Result<(f64, f64), DivergenceError> {
    FPhiGenerator::new(phi, theta, ybar).map(|g| (g.a, g.b))
}

impl FPhiGenerator {
    /// F_Φ with an explicit ȳ (ȳ = e in the usual calibration).
    pub fn new(phi: PhiFamily, theta: f64, ybar: f64) -> Result<Self, DivergenceError> {
        if !(theta > 1.0 && theta.is_finite()) {
            return Err(DivergenceError::Theta(theta));
        }
        Self::build(phi, theta, ybar)
    }

    /// F_Φ with ȳ = e.
    pub fn with_default_ybar(phi: PhiFamily, theta: f64) -> Result<Self, DivergenceError> {
        Self::new(phi, theta, E)
    }

    /// F_Φ with ȳ tied to the family: `ȳ = exp(Φ(x̄))`.
    pub fn coupled(phi: PhiFamily, theta: f64) -> Result<Self, DivergenceError> {
        Self::new(phi, theta, exp(phi.phi_at_x_bar()))
    }

    /// The degenerate member `Φ(x) = x`, `θ = 1`, which coincides with KL.
    pub fn kl_reduction(ybar: f64) -> Result<Self, DivergenceError> {
        Self::build(PhiFamily::Identity, 1.0, ybar)
    }

    fn build(phi: PhiFamily, theta: f64, ybar: f64) -> Result<Self, DivergenceError> {
        if !(ybar >= 1.0 && ybar.is_finite()) {
            return Err(DivergenceError::Ybar(ybar));
        }
        let ln_ybar = log(ybar);
        let phi_x_bar = phi.phi_at_x_bar();
        if ln_ybar < phi_x_bar {
            return Err(DivergenceError::YbarBelowDomain { ln_ybar, phi_x_bar });
        }
        let (a, b) = fphi_coefficients_raw(phi.inverse(ln_ybar), phi.inverse_prime(ln_ybar), theta, ybar);
        if !(a > 0.0 && a.is_finite()) {
            return Err(DivergenceError::Coefficient(a));
        }
        Ok(Self { phi, theta, ybar, ln_ybar, a, b })
    }

    pub fn phi(&self) -> PhiFamily {
        self.phi
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn ybar(&self) -> f64 {
        self.ybar
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `ln ψ(u)`.
    pub fn ln_psi(&self, u: f64) -> f64 {
        log(self.a) + self.theta * self.phi.ln_inverse(u)
    }

    /// `ψ(u) = a Φ⁻¹(u)^θ`.
    pub fn psi(&self, u: f64) -> f64 {
        exp(self.ln_psi(u))
    }

    /// `(ψ, ψ′, ψ″)` at `u`.
    pub fn psi_derivatives(&self, u: f64) -> (f64, f64, f64) {
        let psi = self.psi(u);
        let (d1, d2) = self.phi.log_derivatives(u);
        let t = self.theta;
        (psi, psi * t * d1, psi * t * ((t - 1.0) * d1 * d1 + d2))
    }

    /// Largest `z` handled by the `y log y` branch of `(F′)⁻¹`.
    fn z_bar(&self) -> f64 {
        1.0 + self.ln_ybar
    }

    /// `ln (F′)⁻¹(z)` on the big branch, `z > 1 + log ȳ`.
    pub fn big_branch_log_inverse(&self, z: f64) -> Result<f64, DivergenceError> {
        let l = self.ln_ybar;
        let ln_z = log(z);
        let t = self.theta;
        // ln(ψ + ψ′) - ln z, increasing in u.
        let h = |u: f64| {
            let (d1, d2) = self.phi.log_derivatives(u);
            let value = self.ln_psi(u) + log1p(t * d1) - ln_z;
            let slope = t * d1 + t * (d2 - d1 * d1) / (1.0 + t * d1);
            (value, slope)
        };
        // ψ(u_hi) = z already overshoots because ψ′ > 0.
        let u_hi = self.phi.phi_of_ln((ln_z - log(self.a)) / t);
        let mut hi = if u_hi.is_finite() && u_hi > l { u_hi } else { l + 1.0 };
        let mut grow = 0;
        while h(hi).0 < 0.0 {
            hi = l + 2.0 * (hi - l);
            grow += 1;
            if grow > 2000 || !hi.is_finite() {
                return Err(DivergenceError::Inverse(RootError::NotBracketed {
                    lo: l,
                    hi,
                    f_lo: h(l).0,
                    f_hi: h(hi).0,
                }));
            }
        }
        let opts = RootOptions { xtol: 0.0, rtol: 2.0 * f64::EPSILON, ftol: 0.0, max_iter: 400 };
        let x0 = l + 0.5 * (hi - l);
        roots::newton_bracketed(h, l, hi, x0, opts).map(|r| r.x).map_err(DivergenceError::Inverse)
    }

    pub fn value(&self, y: f64) -> f64 {
        if y <= self.ybar {
            kl_value(y)
        } else {
            y * self.psi(log(y)) + self.b
        }
    }

    pub fn derivative(&self, y: f64) -> f64 {
        if y <= self.ybar {
            log(y) + 1.0
        } else {
            let (p, p1, _) = self.psi_derivatives(log(y));
            p + p1
        }
    }

    pub fn second_derivative(&self, y: f64) -> f64 {
        if y <= self.ybar {
            1.0 / y
        } else {
            let (_, p1, p2) = self.psi_derivatives(log(y));
            (p1 + p2) / y
        }
    }

    /// `F′(e^u)`, usable where `e^u` overflows.
    pub fn derivative_ln(&self, u: f64) -> f64 {
        if u <= self.ln_ybar {
            u + 1.0
        } else {
            let (p, p1, _) = self.psi_derivatives(u);
            p + p1
        }
    }

    pub fn ln_derivative_inverse(&self, z: f64) -> f64 {
        if z <= self.z_bar() {
            z - 1.0
        } else {
            self.big_branch_log_inverse(z).unwrap_or(f64::NAN)
        }
    }

    /// `(F(y) - (y - 1))·f` with `y = e^{lr}`, `f = e^{lf}`.
    pub fn weighted_excess(&self, lr: f64, lf: f64) -> f64 {
        if lr <= self.ln_ybar {
            kl_weighted_excess(lr, lf)
        } else {
            let lg = lr + lf;
            exp(lg + self.ln_psi(lr)) - exp(lg) + (self.b + 1.0) * exp(lf)
        }
    }
}

fn kl_value(y: f64) -> f64 {
    if y == 0.0 {
        0.0
    } else {
        y * log(y)
    }
}

fn kl_weighted_excess(lr: f64, lf: f64) -> f64 {
    if lr == f64::NEG_INFINITY {
        exp(lf)
    } else if lr <= 0.0 {
        exp(lf) * (lr * exp(lr) - expm1(lr))
    } else {
        let g = exp(lr + lf);
        (lr - 1.0) * g + exp(lf)
    }
}

/// A divergence generator `F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Kl,
    Alpha(AlphaGenerator),
    FPhi(FPhiGenerator),
}

impl Generator {
    pub fn alpha(alpha: f64) -> Result<Self, DivergenceError> {
        AlphaGenerator::new(alpha).map(Generator::Alpha)
    }

    pub fn fphi(phi: PhiFamily, theta: f64, ybar: f64) -> Result<Self, DivergenceError> {
        FPhiGenerator::new(phi, theta, ybar).map(Generator::FPhi)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Kl => "kl",
            Generator::Alpha(_) => "alpha",
            Generator::FPhi(_) => "fphi",
        }
    }

    /// `F(y)`, extended to `y = 0` by continuity.
    pub fn value(&self, y: f64) -> f64 {
        match self {
            Generator::Kl => kl_value(y),
            Generator::Alpha(g) => {
                let a = g.alpha;
                (libm::pow(y, a) - 1.0) / (a * (a - 1.0))
            }
            Generator::FPhi(g) => g.value(y),
        }
    }

    pub fn derivative(&self, y: f64) -> f64 {
        match self {
            Generator::Kl => log(y) + 1.0,
            Generator::Alpha(g) => libm::pow(y, g.alpha - 1.0) / (g.alpha - 1.0),
            Generator::FPhi(g) => g.derivative(y),
        }
    }

    /// `F′(e^u)`, usable where `e^u` overflows; `u = -∞` gives `F′(0)`.
    pub fn derivative_ln(&self, u: f64) -> f64 {
        match self {
            Generator::Kl => u + 1.0,
            Generator::Alpha(g) => exp((g.alpha - 1.0) * u) / (g.alpha - 1.0),
            Generator::FPhi(g) => g.derivative_ln(u),
        }
    }

    pub fn second_derivative(&self, y: f64) -> f64 {
        match self {
            Generator::Kl => 1.0 / y,
            Generator::Alpha(g) => libm::pow(y, g.alpha - 2.0),
            Generator::FPhi(g) => g.second_derivative(y),
        }
    }

    /// `ln (F′)⁻¹(z)`; `-∞` where the α-generator inverse is clamped to 0.
    /// `NaN` only if the F_Φ big-branch root find fails.
    pub fn ln_derivative_inverse(&self, z: f64) -> f64 {
        match self {
            Generator::Kl => z - 1.0,
            Generator::Alpha(g) => {
                let am1 = g.alpha - 1.0;
                if z <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    log(am1 * z) / am1
                }
            }
            Generator::FPhi(g) => g.ln_derivative_inverse(z),
        }
    }

    /// `(F′)⁻¹(z)`.
    pub fn derivative_inverse(&self, z: f64) -> f64 {
        exp(self.ln_derivative_inverse(z))
    }

    /// Values of `z` at which `(F′)⁻¹` changes formula.
    pub fn inverse_kinks(&self) -> Option<f64> {
        match self {
            Generator::Kl => None,
            Generator::Alpha(_) => Some(0.0),
            Generator::FPhi(g) => Some(g.z_bar()),
        }
    }

    /// `F′(1)`.
    pub fn slope_at_one(&self) -> f64 {
        match self {
            Generator::Alpha(g) => 1.0 / (g.alpha - 1.0),
            _ => 1.0,
        }
    }

    /// `(F(y) - F′(1)(y - 1))·f` for `y = e^{lr}`, `f = e^{lf}`: a
    /// nonnegative integrand with the same integral as `F(g/f) f` whenever
    /// both densities are normalized.
    pub fn weighted_excess(&self, lr: f64, lf: f64) -> f64 {
        if lf == f64::NEG_INFINITY {
            return 0.0;
        }
        match self {
            Generator::Kl => kl_weighted_excess(lr, lf),
            Generator::Alpha(g) => {
                let a = g.alpha;
                let norm = a * (a - 1.0);
                if lr <= 0.0 {
                    exp(lf) * (expm1(a * lr) - a * expm1(lr)) / norm
                } else {
                    (exp(a * lr + lf) - a * exp(lr + lf) + (a - 1.0) * exp(lf)) / norm
                }
            }
            Generator::FPhi(g) => g.weighted_excess(lr, lf),
        }
    }
}

/// `D_F(η | ν) = ∫ F(g/f) f dx` over the support of `ν`, with `g/f` formed
/// in log space. `η` putting mass where `ν` has none is reported as
/// diverged with [`Detail::SupportMismatch`].
pub fn divergence<A: LogDensity + ?Sized, B: LogDensity + ?Sized>(
    generator: &Generator,
    eta: &A,
    nu: &B,
    cfg: &QuadratureConfig,
) -> IntegralResult {
    divergence_with_partials(generator, eta, nu, cfg).result
}

/// As [`divergence`], keeping the cutoff-grid partial integrals.
pub fn divergence_with_partials<A: LogDensity + ?Sized, B: LogDensity + ?Sized>(
    generator: &Generator,
    eta: &A,
    nu: &B,
    cfg: &QuadratureConfig,
) -> SemiInfinite {
    let lo = nu.support_min();
    if eta.support_min() < lo {
        return SemiInfinite { result: IntegralResult::diverged(Detail::SupportMismatch), partials: Vec::new() };
    }
    let integrand = |x: f64| {
        let lf = nu.ln_density(x);
        let lg = eta.ln_density(x);
        if lf == f64::NEG_INFINITY {
            return if lg == f64::NEG_INFINITY { 0.0 } else { f64::INFINITY };
        }
        generator.weighted_excess(lg - lf, lf)
    };
    let mut breaks = eta.breakpoints();
    breaks.extend(nu.breakpoints());
    breaks.push(eta.support_min());
    SemiInfinite::run(&integrand, lo, &breaks, cfg)
}
