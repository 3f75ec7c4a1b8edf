//! # divball-core
//!
//! F-divergence uncertainty balls around heavy-tailed reference models, and
//! worst-case expectations over those balls.
//!
//! A decision maker works with a reference (nominal) model `ν` with density
//! `f = exp(-φ)` and wants the worst expected value over every alternative
//! `η` (density `g = exp(-γ)`) with `D_F(η | ν) ≤ κ`, where
//!
//! ```text
//! D_F(η | ν) = ∫ F(g(x) / f(x)) f(x) dx
//! ```
//!
//! | Generator | F(y) | Good for |
//! |-----------|------|----------|
//! | KL | y log y | light tails (φ at least linear) |
//! | α-divergence | (y^α - 1) / (α(α - 1)) | power-law tails |
//! | F_Φ | y log y below ȳ, a·y·Φ⁻¹(log y)^θ + b above | Weibull / lognormal tails |
//!
//! ## Modules
//!
//! - [`quadrature`]: adaptive Gauss–Kronrod integration with a three-way
//!   convergence status (converged / diverged / inconclusive).
//! - [`distributions`]: the reference and alternative model families,
//!   including truncation above a quantile and the Φ machinery.
//! - [`divergence`]: generators, their derivatives and inverse derivatives,
//!   and the divergence functional.
//! - [`tailcheck`]: tail classes and ball-membership verdicts, small-ball
//!   construction, and the I(c) finiteness diagnostic.
//! - [`worstcase`]: the worst-case expectation solver.
//! - [`calibrate`]: safety-margin calibration, radius transfer between
//!   divergences, margin tables and κ-sweeps.
//!
//! The crate is `no_std` with `alloc`; file formats, the CLI and parallel
//! execution live in the companion `divball` crate.

#![no_std]
#![forbid(unsafe_code)]
// Parameter checks are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod calibrate;
pub mod distributions;
pub mod divergence;
pub mod quadrature;
pub mod roots;
pub mod special;
pub mod tailcheck;
pub mod worstcase;

pub use calibrate::{CalibrationSpec, MarginCell, MarginTable, SweepRecord};
pub use distributions::{DistributionModel, Family, LogDensity, ModelError, PhiFamily};
pub use divergence::{divergence, DivergenceError, FPhiGenerator, Generator};
pub use quadrature::{IntegralResult, QuadratureConfig, Status};
pub use tailcheck::{TailClass, TailReport, Verdict};
pub use worstcase::{SolverConfig, WorstCaseError, WorstCaseProblem, WorstCaseSolution};
