//! Tail classes and ball membership.
//!
//! Every model in the menu has a closed-form leading term for its
//! log-density exponent `φ`:
//!
//! | Family | Leading term of φ | Class |
//! |--------|-------------------|-------|
//! | Exponential(λ) | λ x | (i) |
//! | HalfGaussian(s) | x² / (2s²) | (i) |
//! | Weibull(k, λ) | λ^{-k} x^k | (ii) |
//! | GeneralizedLognormal(r, σ, μ) | (log x)^r / (rσ^r) | (ii) |
//! | Pareto(c, x_m) | (c + 1) log x | (iii), degree c + 1 |
//!
//! Limits such as `φ/x`, `φ/log x` and `γ/φ` are read off these forms and
//! corroborated numerically on `x ∈ {10², …, 10⁶}`.

use crate::distributions::{DistributionModel, Family, LogDensity, ModelError};
use crate::divergence::{divergence, FPhiGenerator, Generator};
use crate::quadrature::{integrate_semi_infinite, IntegralResult, QuadratureConfig, SemiInfinite, Status};
use crate::roots::RootError;
use alloc::vec;
use alloc::vec::Vec;
use libm::{exp, fabs, log, log1p, pow};
use thiserror::Error;

/// Tail grid used for numeric corroboration.
pub const TAIL_GRID: [f64; 5] = [1e2, 1e3, 1e4, 1e5, 1e6];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TailError {
    #[error("numeric {limit} = {value} at x = 1e6 does not corroborate the symbolic limit {expected}")]
    Corroboration { limit: &'static str, value: f64, expected: f64 },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("the divergence of the alternative is not finite ({0:?})")]
    InfiniteDivergence(Status),
    #[error("no cutoff M in the search range brings the divergence below {kappa}")]
    Unreachable { kappa: f64 },
    #[error("{0}")]
    Model(#[from] ModelError),
    #[error("{0}")]
    Root(RootError),
}

/// Leading behavior of `φ(x)` as `x → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Growth {
    /// `coef · x^exp`.
    Power { coef: f64, exp: f64 },
    /// `coef · (log x)^exp`.
    LogPower { coef: f64, exp: f64 },
}

impl Growth {
    pub fn of(model: &DistributionModel) -> Self {
        match model.family() {
            Family::Exponential { rate } => Growth::Power { coef: rate, exp: 1.0 },
            Family::HalfGaussian { scale } => Growth::Power { coef: 0.5 / (scale * scale), exp: 2.0 },
            Family::Weibull { shape, scale } => Growth::Power { coef: pow(scale, -shape), exp: shape },
            Family::GeneralizedLognormal { r, sigma, .. } => {
                Growth::LogPower { coef: 1.0 / (r * pow(sigma, r)), exp: r }
            }
            Family::Pareto { tail, .. } => Growth::LogPower { coef: tail + 1.0, exp: 1.0 },
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Growth::Power { coef, exp } => coef * pow(x, exp),
            Growth::LogPower { coef, exp } => coef * pow(log(x), exp),
        }
    }

    /// `lim φ(x)/x`.
    pub fn over_x(&self) -> f64 {
        match *self {
            Growth::Power { coef, exp: 1.0 } => coef,
            Growth::Power { exp, .. } if exp > 1.0 => f64::INFINITY,
            _ => 0.0,
        }
    }

    /// `lim φ(x)/log x`.
    pub fn over_log_x(&self) -> f64 {
        match *self {
            Growth::Power { .. } => f64::INFINITY,
            Growth::LogPower { coef, exp: 1.0 } => coef,
            Growth::LogPower { exp, .. } if exp > 1.0 => f64::INFINITY,
            Growth::LogPower { .. } => 0.0,
        }
    }

    /// `lim self/other` for two leading terms.
    pub fn ratio_limit(&self, other: &Growth) -> f64 {
        fn compare(e1: f64, c1: f64, e2: f64, c2: f64) -> f64 {
            if e1 > e2 {
                f64::INFINITY
            } else if e1 < e2 {
                0.0
            } else {
                c1 / c2
            }
        }
        match (*self, *other) {
            (Growth::Power { coef: c1, exp: e1 }, Growth::Power { coef: c2, exp: e2 }) => compare(e1, c1, e2, c2),
            (Growth::LogPower { coef: c1, exp: e1 }, Growth::LogPower { coef: c2, exp: e2 }) => compare(e1, c1, e2, c2),
            (Growth::Power { .. }, Growth::LogPower { .. }) => f64::INFINITY,
            (Growth::LogPower { .. }, Growth::Power { .. }) => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailClass {
    /// Light tails: `φ` grows at least linearly.
    I,
    /// Heavy but not fat: between logarithmic and linear.
    II,
    /// Fat, polynomial tails with `φ(x)/log x → degree`.
    III { degree: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Finite,
    Infinite,
    Inconclusive,
}

impl Verdict {
    pub fn from_status(status: Status) -> Self {
        match status {
            Status::Converged => Verdict::Finite,
            Status::Diverged => Verdict::Infinite,
            Status::Inconclusive => Verdict::Inconclusive,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Finite => "Finite",
            Verdict::Infinite => "Infinite",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Which ball a verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BallKind {
    Kl,
    Alpha(f64),
    FPhi { theta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailReport {
    pub tail_class: TailClass,
    pub growth: Growth,
    pub lim_phi_over_x: f64,
    pub lim_phi_over_logx: f64,
    /// `lim γ/φ` against an alternative, when one was supplied.
    pub gamma_over_phi_limit: Option<f64>,
    pub verdicts: Vec<(BallKind, Verdict)>,
}

fn corroborate(limit: &'static str, expected: f64, ratio: impl Fn(f64) -> f64) -> Result<(), TailError> {
    let values: Vec<f64> = TAIL_GRID.iter().map(|&x| ratio(x)).collect();
    let last = values[values.len() - 1];
    let ok = if expected == f64::INFINITY {
        values.windows(2).all(|w| w[1] > w[0])
    } else if expected == 0.0 {
        values.windows(2).all(|w| w[1] < w[0])
    } else {
        fabs(last / expected - 1.0) <= 0.05
    };
    if ok {
        Ok(())
    } else {
        Err(TailError::Corroboration { limit, value: last, expected })
    }
}

/// Tail class with symbolic limits, corroborated on the tail grid.
pub fn classify(model: &DistributionModel) -> Result<TailReport, TailError> {
    let growth = Growth::of(model);
    let base = model.base();
    let phi = |x: f64| -base.ln_density(x);
    let lim_phi_over_x = growth.over_x();
    let lim_phi_over_logx = growth.over_log_x();
    corroborate("phi(x)/x", lim_phi_over_x, |x| phi(x) / x)?;
    corroborate("phi(x)/log x", lim_phi_over_logx, |x| phi(x) / log(x))?;
    let tail_class = if lim_phi_over_x > 0.0 {
        TailClass::I
    } else if lim_phi_over_logx.is_finite() {
        TailClass::III { degree: lim_phi_over_logx }
    } else {
        TailClass::II
    };
    Ok(TailReport {
        tail_class,
        growth,
        lim_phi_over_x,
        lim_phi_over_logx,
        gamma_over_phi_limit: None,
        verdicts: Vec::new(),
    })
}

/// `lim γ(x)/φ(x)` for alternative `η` (exponent γ) against nominal `ν`.
pub fn gamma_over_phi(nu: &DistributionModel, eta: &DistributionModel) -> f64 {
    Growth::of(eta).ratio_limit(&Growth::of(nu))
}

fn expectation<D: LogDensity + ?Sized>(eta: &D, weight: impl Fn(f64) -> f64, cfg: &QuadratureConfig) -> IntegralResult {
    let f = |x: f64| {
        let lg = eta.ln_density(x);
        if lg == f64::NEG_INFINITY {
            return 0.0;
        }
        let w = weight(x);
        if w == 0.0 {
            0.0
        } else {
            w * exp(lg)
        }
    };
    SemiInfinite::run(&f, eta.support_min(), &eta.breakpoints(), cfg).result
}

/// `D_KL(η | ν)` is finite iff `∫ φ g < ∞`, given `∫ γ g < ∞`.
pub fn kl_ball_verdict<A: LogDensity + ?Sized>(nu: &DistributionModel, eta: &A, cfg: &QuadratureConfig) -> Verdict {
    if eta.support_min() < nu.support_min() {
        return Verdict::Infinite;
    }
    let entropy = expectation(eta, |x| -eta.ln_density(x), cfg);
    if entropy.status != Status::Converged {
        return Verdict::Inconclusive;
    }
    let cross = expectation(eta, |x| -nu.ln_density(x), cfg);
    Verdict::from_status(cross.status)
}

/// Threshold on `lim γ/φ` above which the α-ball contains `η`.
pub fn alpha_threshold(nu: &DistributionModel, alpha: f64) -> f64 {
    let base = (alpha - 1.0) / alpha;
    match Growth::of(nu) {
        Growth::LogPower { coef, exp: 1.0 } => base + 1.0 / (coef * alpha),
        _ => base,
    }
}

pub fn alpha_ball_verdict(nu: &DistributionModel, eta: &DistributionModel, alpha: f64) -> Verdict {
    if eta.support_min() < nu.support_min() {
        return Verdict::Infinite;
    }
    let limit = gamma_over_phi(nu, eta);
    let threshold = alpha_threshold(nu, alpha);
    if fabs(limit - threshold) <= 1e-12 * threshold {
        Verdict::Inconclusive
    } else if limit > threshold {
        Verdict::Finite
    } else {
        Verdict::Infinite
    }
}

/// Midpoints of `n` equal slices of `(1, θ)`.
fn t_grid(theta: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| 1.0 + (theta - 1.0) * (j as f64 + 0.5) / n as f64)
}

/// F_Φ ball around a class (ii) nominal: finite when `E_η[X^θ] < ∞`;
/// infinite when `x^{t+1} g(x)` stays bounded below for some `t ∈ (1, θ)`.
pub fn fphi_ball_verdict<A: LogDensity + ?Sized>(
    nu: &DistributionModel,
    eta: &A,
    theta: f64,
    cfg: &QuadratureConfig,
) -> Verdict {
    if nu.phi_family().is_err() || !(theta > 1.0) {
        return Verdict::Inconclusive;
    }
    if eta.support_min() < nu.support_min() {
        return Verdict::Infinite;
    }
    let moment = expectation(eta, |x| pow(x, theta), cfg);
    if moment.status == Status::Converged {
        return Verdict::Finite;
    }
    let lo = eta.support_min();
    let grid: Vec<f64> = TAIL_GRID.iter().map(|m| lo + m).collect();
    let dominates = t_grid(theta, 8).any(|t| {
        let v: Vec<f64> = grid.iter().map(|&x| (t + 1.0) * log(x) + eta.ln_density(x)).collect();
        v.iter().all(|s| s.is_finite()) && v.windows(2).all(|w| w[1] >= w[0] - 1e-9 * fabs(w[0]).max(1.0))
    });
    if dominates {
        Verdict::Infinite
    } else {
        Verdict::Inconclusive
    }
}

/// F_Φ ball around a class (ii) nominal for a model from the menu, read off
/// the tails. Since `Φ⁻¹(φ(x)) ≍ x`, the integrand behaves like `x^θ g(x)`
/// when `γ ≪ φ` and is bounded otherwise, so only a Pareto alternative can
/// fall outside: it is inside iff `θ < c`.
pub fn fphi_tail_verdict(nu: &DistributionModel, eta: &DistributionModel, theta: f64) -> Verdict {
    if nu.phi_family().is_err() || !(theta > 1.0) {
        return Verdict::Inconclusive;
    }
    if eta.support_min() < nu.support_min() {
        return Verdict::Infinite;
    }
    match eta.family() {
        Family::Pareto { tail, .. } if theta < tail => Verdict::Finite,
        Family::Pareto { .. } => Verdict::Infinite,
        _ => Verdict::Finite,
    }
}

/// Points `s = -ln x` at which the integrand is probed near `x = 0`.
pub const START_GRID: [f64; 6] = [25.0, 50.0, 100.0, 200.0, 400.0, 700.0];

/// Integrability of the divergence integrand at the support start of `ν`.
///
/// The tail verdicts only look at `x → ∞`, but a nominal whose density
/// vanishes at the origin faster than the alternative's (a lognormal, say)
/// can make the divergence infinite there as well. Every density in the
/// menu is bounded and positive at a support start `a > 0`, so only `a = 0`
/// needs work: with `x = e^{-s}` the integrand becomes `h(s) e^{-s}`, and
/// its log-slope on [`START_GRID`] decides. Slopes within `1e-6` of zero
/// or above mean infinite, slopes below `-1e-3` finite.
pub fn support_start_verdict<A: LogDensity + ?Sized>(
    nu: &DistributionModel,
    eta: &A,
    generator: &Generator,
) -> Verdict {
    let a = nu.support_min();
    if eta.support_min() < a {
        return Verdict::Infinite;
    }
    if a > 0.0 || eta.support_min() > 0.0 {
        return Verdict::Finite;
    }
    let mut h = [0.0; START_GRID.len()];
    for (hj, &s) in h.iter_mut().zip(&START_GRID) {
        let x = exp(-s);
        let lf = nu.ln_density(x);
        let lg = eta.ln_density(x);
        let v = if lf == f64::NEG_INFINITY {
            if lg == f64::NEG_INFINITY {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            generator.weighted_excess(lg - lf, lf)
        };
        if v.is_nan() {
            return Verdict::Inconclusive;
        }
        if v == f64::INFINITY {
            return Verdict::Infinite;
        }
        *hj = log(v) - s;
    }
    let n = h.len();
    if h[n - 1] == f64::NEG_INFINITY {
        return Verdict::Finite;
    }
    let slopes: Vec<f64> = (n - 3..n).map(|j| (h[j] - h[j - 1]) / (START_GRID[j] - START_GRID[j - 1])).collect();
    if slopes.iter().all(|&d| d <= -1e-3) {
        Verdict::Finite
    } else if slopes.iter().all(|&d| d >= -1e-6) {
        Verdict::Infinite
    } else {
        Verdict::Inconclusive
    }
}

/// Tail verdict for one generator.
pub fn tail_verdict(
    nu: &DistributionModel,
    eta: &DistributionModel,
    generator: &Generator,
    cfg: &QuadratureConfig,
) -> Verdict {
    match generator {
        Generator::Kl => kl_ball_verdict(nu, eta, cfg),
        Generator::Alpha(a) => alpha_ball_verdict(nu, eta, a.alpha()),
        Generator::FPhi(g) => fphi_tail_verdict(nu, eta, g.theta()),
    }
}

/// Whether `D_F(η | ν) < ∞`: the tail verdict, overridden when the
/// integrand already fails at the support start.
pub fn ball_verdict(
    nu: &DistributionModel,
    eta: &DistributionModel,
    generator: &Generator,
    cfg: &QuadratureConfig,
) -> Verdict {
    let tail = tail_verdict(nu, eta, generator, cfg);
    match support_start_verdict(nu, eta, generator) {
        Verdict::Infinite => Verdict::Infinite,
        Verdict::Inconclusive if tail == Verdict::Finite => Verdict::Inconclusive,
        _ => tail,
    }
}

impl BallKind {
    pub fn of(generator: &Generator) -> Self {
        match generator {
            Generator::Kl => BallKind::Kl,
            Generator::Alpha(a) => BallKind::Alpha(a.alpha()),
            Generator::FPhi(g) => BallKind::FPhi { theta: g.theta() },
        }
    }
}

/// Verdicts for several balls at once, plus the class of `ν` and `lim γ/φ`.
pub fn report(
    nu: &DistributionModel,
    eta: &DistributionModel,
    balls: &[Generator],
    cfg: &QuadratureConfig,
) -> Result<TailReport, TailError> {
    let mut rep = classify(nu)?;
    rep.gamma_over_phi_limit = Some(gamma_over_phi(nu, eta));
    rep.verdicts = balls.iter().map(|g| (BallKind::of(g), ball_verdict(nu, eta, g, cfg))).collect();
    Ok(rep)
}

/// `η_M`: the nominal below `M`, a rescaled copy of `η` above it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShrunkModel {
    pub nominal: DistributionModel,
    pub alternative: DistributionModel,
    pub m: f64,
    /// `ln c(M) = ln(∫_M^∞ f / ∫_M^∞ g)`.
    pub ln_c: f64,
}

impl ShrunkModel {
    pub fn new(nominal: DistributionModel, alternative: DistributionModel, m: f64) -> Self {
        let ln_c = nominal.ln_survival(m) - alternative.ln_survival(m);
        Self { nominal, alternative, m, ln_c }
    }

    pub fn c(&self) -> f64 {
        exp(self.ln_c)
    }
}

impl LogDensity for ShrunkModel {
    fn support_min(&self) -> f64 {
        self.nominal.support_min()
    }

    fn ln_density(&self, x: f64) -> f64 {
        if x <= self.m {
            self.nominal.ln_density(x)
        } else {
            let lg = self.alternative.ln_density(x);
            if lg == f64::NEG_INFINITY {
                lg
            } else {
                self.ln_c + lg
            }
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut b = vec![self.m];
        b.extend(self.alternative.breakpoints());
        b.push(self.alternative.support_min());
        b
    }
}

/// Output of [`shrink_to_radius`].
#[derive(Debug, Clone, PartialEq)]
pub struct Shrunk {
    pub model: ShrunkModel,
    pub divergence: IntegralResult,
    /// `D_F(η | ν)` before shrinking.
    pub original_divergence: f64,
}

/// Moves `η` into the ball of radius `κ` by replacing it with `ν` below a
/// cutoff `M`, keeping the tail of `η` up to a constant.
pub fn shrink_to_radius(
    nu: &DistributionModel,
    eta: &DistributionModel,
    generator: &Generator,
    kappa: f64,
    cfg: &QuadratureConfig,
) -> Result<Shrunk, TailError> {
    if !(kappa > 0.0) {
        return Err(TailError::Precondition("radius must be positive"));
    }
    let full = divergence(generator, eta, nu, cfg);
    if full.status != Status::Converged {
        return Err(TailError::InfiniteDivergence(full.status));
    }
    let lo = nu.support_min();
    if full.value <= kappa {
        let model = ShrunkModel { nominal: *nu, alternative: *eta, m: lo, ln_c: 0.0 };
        return Ok(Shrunk { model, divergence: full, original_divergence: full.value });
    }
    let log_ratio: Vec<f64> = TAIL_GRID.iter().map(|m| nu.ln_density(lo + m) - eta.ln_density(lo + m)).collect();
    if !log_ratio.windows(2).all(|w| w[1] < w[0]) {
        return Err(TailError::Precondition("the alternative must have the heavier tail (f/g -> 0)"));
    }

    let d_at = |m: f64| {
        let model = ShrunkModel::new(*nu, *eta, m);
        let d = divergence(generator, &model, nu, cfg);
        (model, d)
    };
    let feasible = |d: &IntegralResult| d.status == Status::Converged && d.value <= kappa;

    // Geometric search on offsets 2^j from the support start.
    let mut below = lo;
    let mut found = None;
    for j in -4..200 {
        let m = lo + pow(2.0, j as f64);
        let (model, d) = d_at(m);
        if !model.ln_c.is_finite() {
            break;
        }
        if feasible(&d) {
            found = Some((m, model, d));
            break;
        }
        below = m;
    }
    let (mut above, mut best_model, mut best_d) = found.ok_or(TailError::Unreachable { kappa })?;

    // Bisection for the smallest feasible cutoff.
    for _ in 0..60 {
        if above - below <= 1e-10 * above.max(1.0) {
            break;
        }
        let mid = 0.5 * (below + above);
        let (model, d) = d_at(mid);
        if feasible(&d) {
            above = mid;
            best_model = model;
            best_d = d;
        } else {
            below = mid;
        }
    }
    Ok(Shrunk { model: best_model, divergence: best_d, original_divergence: full.value })
}

/// `I(c)` together with the lower limit actually used.
#[derive(Debug, Clone, PartialEq)]
pub struct ICDiagnostic {
    pub c_used: f64,
    pub result: IntegralResult,
}

/// `I(c) = ∫_c^∞ e^y (ψ+ψ′)(ψ′+ψ″) f((F′(e^y) - α₁)/α₂) dy`, with `c` raised
/// until the argument of `f` lies inside the support and `y` on the big
/// branch.
pub fn i_c_diagnostic(
    nu: &DistributionModel,
    generator: &FPhiGenerator,
    alpha1: f64,
    alpha2: f64,
    c: f64,
    cfg: &QuadratureConfig,
) -> Result<ICDiagnostic, TailError> {
    if !(alpha2 > 0.0) {
        return Err(TailError::Precondition("alpha2 must be positive"));
    }
    let l = log(generator.ybar());
    let z_min = alpha1 + alpha2 * nu.support_min();
    let mut c_used = c.max(l);
    if z_min > 1.0 + l {
        let y_star = generator.big_branch_log_inverse(z_min).map_err(|e| match e {
            crate::divergence::DivergenceError::Inverse(r) => TailError::Root(r),
            _ => TailError::Precondition("F' inverse failed"),
        })?;
        c_used = c_used.max(y_star);
    }
    // Strictly inside both constraints.
    c_used += 1e-9 * c_used.abs().max(1.0);
    let theta = generator.theta();
    let integrand = |y: f64| {
        let (d1, d2) = generator.phi().log_derivatives(y);
        let ln_psi = generator.ln_psi(y);
        let ln_fp = ln_psi + log1p(theta * d1);
        let second = theta * (d1 + (theta - 1.0) * d1 * d1 + d2);
        if !(second > 0.0) {
            return 0.0;
        }
        let x = (exp(ln_fp) - alpha1) / alpha2;
        if !x.is_finite() {
            return 0.0;
        }
        let lf = nu.ln_density(x);
        if lf == f64::NEG_INFINITY {
            return 0.0;
        }
        exp(y + ln_fp + ln_psi + log(second) + lf)
    };
    let result = integrate_semi_infinite(integrand, c_used, cfg);
    Ok(ICDiagnostic { c_used, result })
}
