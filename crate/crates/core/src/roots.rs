//! Bracketing root finders: Brent's method, plain bisection, and bracket
//! expansion for monotone functions.

use libm::fabs;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    pub xtol: f64,
    pub rtol: f64,
    /// Stop as soon as `|f(x)| ≤ ftol`.
    pub ftol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { xtol: 1e-14, rtol: 4.0 * f64::EPSILON, ftol: 0.0, max_iter: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum RootError {
    #[error("root not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    NotBracketed { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("no convergence after {iterations} iterations, bracket [{lo}, {hi}]")]
    NoConvergence { lo: f64, hi: f64, iterations: usize },
    #[error("function value is not finite at x = {x}")]
    NonFinite { x: f64 },
}

/// Brent's method on `[lo, hi]`.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, opts: RootOptions) -> Result<Root, RootError> {
    let f_lo = f(lo);
    let f_hi = f(hi);
    brent_with_values(f, lo, hi, f_lo, f_hi, opts)
}

/// Brent's method when `f(lo)` and `f(hi)` are already known.
pub fn brent_with_values<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
    opts: RootOptions,
) -> Result<Root, RootError> {
    if f_lo.is_nan() {
        return Err(RootError::NonFinite { x: lo });
    }
    if f_hi.is_nan() {
        return Err(RootError::NonFinite { x: hi });
    }
    if f_lo == 0.0 {
        return Ok(Root { x: lo, fx: 0.0, iterations: 0 });
    }
    if f_hi == 0.0 {
        return Ok(Root { x: hi, fx: 0.0, iterations: 0 });
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(RootError::NotBracketed { lo, hi, f_lo, f_hi });
    }

    let (mut xpre, mut xcur) = (lo, hi);
    let (mut fpre, mut fcur) = (f_lo, f_hi);
    let (mut xblk, mut fblk) = (0.0, 0.0);
    let (mut spre, mut scur) = (0.0, 0.0);

    for iter in 0..opts.max_iter {
        if fpre != 0.0 && fcur != 0.0 && (fpre < 0.0) != (fcur < 0.0) {
            xblk = xpre;
            fblk = fpre;
            spre = xcur - xpre;
            scur = spre;
        }
        if fabs(fblk) < fabs(fcur) {
            xpre = xcur;
            xcur = xblk;
            xblk = xpre;
            fpre = fcur;
            fcur = fblk;
            fblk = fpre;
        }

        let delta = (opts.xtol + opts.rtol * fabs(xcur)) / 2.0;
        let sbis = (xblk - xcur) / 2.0;
        if fcur == 0.0 || fabs(fcur) <= opts.ftol || fabs(sbis) < delta {
            return Ok(Root { x: xcur, fx: fcur, iterations: iter });
        }

        if fabs(spre) > delta && fabs(fcur) < fabs(fpre) {
            let stry = if xpre == xblk {
                -fcur * (xcur - xpre) / (fcur - fpre)
            } else {
                let dpre = (fpre - fcur) / (xpre - xcur);
                let dblk = (fblk - fcur) / (xblk - xcur);
                -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            };
            if 2.0 * fabs(stry) < fabs(spre).min(3.0 * fabs(sbis) - delta) {
                spre = scur;
                scur = stry;
            } else {
                spre = sbis;
                scur = sbis;
            }
        } else {
            spre = sbis;
            scur = sbis;
        }

        xpre = xcur;
        fpre = fcur;
        if fabs(scur) > delta {
            xcur += scur;
        } else {
            xcur += if sbis > 0.0 { delta } else { -delta };
        }
        fcur = f(xcur);
        if fcur.is_nan() {
            return Err(RootError::NonFinite { x: xcur });
        }
    }
    let (a, b) = if xcur < xblk { (xcur, xblk) } else { (xblk, xcur) };
    Err(RootError::NoConvergence { lo: a, hi: b, iterations: opts.max_iter })
}

/// Bisection; tolerates infinite function values at either end.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, opts: RootOptions) -> Result<Root, RootError> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(RootError::NonFinite { x: if f_lo.is_nan() { lo } else { hi } });
    }
    if (f_lo > 0.0) == (f_hi > 0.0) && f_lo != 0.0 && f_hi != 0.0 {
        return Err(RootError::NotBracketed { lo, hi, f_lo, f_hi });
    }
    for iter in 0..opts.max_iter {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid.is_nan() {
            return Err(RootError::NonFinite { x: mid });
        }
        if f_mid == 0.0 || fabs(f_mid) <= opts.ftol || (hi - lo) / 2.0 < opts.xtol + opts.rtol * fabs(mid) {
            return Ok(Root { x: mid, fx: f_mid, iterations: iter });
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(RootError::NoConvergence { lo, hi, iterations: opts.max_iter })
}

/// Newton's method safeguarded by a bracket: any step that leaves `[lo, hi]`
/// or fails to halve the bracket fast enough becomes a bisection step.
/// `f` returns `(value, derivative)` and must change sign on the bracket.
pub fn newton_bracketed<F: FnMut(f64) -> (f64, f64)>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    x0: f64,
    opts: RootOptions,
) -> Result<Root, RootError> {
    let (f_lo, _) = f(lo);
    let (f_hi, _) = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(RootError::NonFinite { x: if f_lo.is_nan() { lo } else { hi } });
    }
    if f_lo == 0.0 {
        return Ok(Root { x: lo, fx: 0.0, iterations: 0 });
    }
    if f_hi == 0.0 {
        return Ok(Root { x: hi, fx: 0.0, iterations: 0 });
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(RootError::NotBracketed { lo, hi, f_lo, f_hi });
    }
    let increasing = f_hi > 0.0;
    let mut x = if x0 > lo && x0 < hi { x0 } else { 0.5 * (lo + hi) };
    let mut step_old = hi - lo;
    for iter in 0..opts.max_iter {
        let (fx, dfx) = f(x);
        if fx.is_nan() {
            return Err(RootError::NonFinite { x });
        }
        if fx == 0.0 || fabs(fx) <= opts.ftol {
            return Ok(Root { x, fx, iterations: iter });
        }
        if (fx > 0.0) == increasing {
            hi = x;
        } else {
            lo = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx.is_finite() && dfx != 0.0 && newton > lo && newton < hi && fabs(newton - x) < 0.5 * step_old {
            newton
        } else {
            0.5 * (lo + hi)
        };
        step_old = fabs(next - x);
        if step_old <= opts.xtol + opts.rtol * fabs(next) || hi - lo <= opts.xtol + opts.rtol * fabs(x) {
            return Ok(Root { x: next, fx, iterations: iter + 1 });
        }
        x = next;
    }
    Err(RootError::NoConvergence { lo, hi, iterations: opts.max_iter })
}

/// Expands `[lo, hi]` for an increasing function until `f(lo) < 0 < f(hi)`
/// (or the step budget is exhausted). Returns the bracket with its values.
pub fn expand_increasing<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    max_steps: usize,
) -> Result<(f64, f64, f64, f64), RootError> {
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    let mut width = hi - lo;
    for _ in 0..max_steps {
        if f_lo.is_nan() {
            return Err(RootError::NonFinite { x: lo });
        }
        if f_hi.is_nan() {
            return Err(RootError::NonFinite { x: hi });
        }
        if f_lo <= 0.0 && f_hi >= 0.0 {
            return Ok((lo, hi, f_lo, f_hi));
        }
        width *= 2.0;
        if f_lo > 0.0 {
            hi = lo;
            f_hi = f_lo;
            lo -= width;
            f_lo = f(lo);
        } else {
            lo = hi;
            f_lo = f_hi;
            hi += width;
            f_hi = f(hi);
        }
    }
    Err(RootError::NotBracketed { lo, hi, f_lo, f_hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let r = brent(|x| x * x * x - 2.0, 0.0, 2.0, RootOptions::default()).unwrap();
        assert!((r.x - libm::cbrt(2.0)).abs() < 1e-14);
        assert!(r.iterations < 40);
    }

    #[test]
    fn brent_rejects_unbracketed() {
        let err = brent(|x| x * x + 1.0, -1.0, 1.0, RootOptions::default()).unwrap_err();
        assert!(matches!(err, RootError::NotBracketed { .. }));
    }

    #[test]
    fn bisect_handles_infinite_end() {
        let r = bisect(|x| if x > 3.0 { f64::INFINITY } else { x - 1.0 }, 0.0, 10.0, RootOptions::default()).unwrap();
        assert!((r.x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn newton_converges_quadratically_inside_bracket() {
        let r = newton_bracketed(|x| (x * x - 2.0, 2.0 * x), 0.0, 10.0, 9.0, RootOptions::default()).unwrap();
        assert!((r.x - core::f64::consts::SQRT_2).abs() < 1e-14);
        assert!(r.iterations < 20);
        // A flat derivative forces bisection instead of a wild step.
        let r = newton_bracketed(|x| (libm::atan(x - 1.0), 0.0), -50.0, 80.0, 70.0, RootOptions::default()).unwrap();
        assert!((r.x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expansion_reaches_far_root() {
        let (lo, hi, flo, fhi) = expand_increasing(|x| x - 1000.0, -1.0, 1.0, 64).unwrap();
        assert!(lo <= 1000.0 && hi >= 1000.0 && flo <= 0.0 && fhi >= 0.0);
        let (lo, hi, _, _) = expand_increasing(|x| x + 1000.0, -1.0, 1.0, 64).unwrap();
        assert!(lo <= -1000.0 && hi >= -1000.0);
    }
}
