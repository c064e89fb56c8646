//! Bracketing bisection for monotone non-increasing functions.

use crate::error::{Error, Result};
use crate::schmidt::SearchConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub root: f64,
    /// `f(root) - target`
    pub residual: f64,
    pub iterations: usize,
}

/// Rounding noise tolerated before a midpoint is declared to break monotonicity.
fn slack(x: f64) -> f64 {
    1e-14 * x.abs().max(1.0)
}

/// Finds `x` in `[lo, hi]` with `f(x) = target` for non-increasing `f`.
///
/// The caller guarantees `f(lo) >= target >= f(hi)`. Every iteration keeps
/// that bracket; a midpoint value outside `[f(hi), f(lo)]` means `f` is not
/// monotone and aborts with `ConvergenceFailure`. Stops when the bracket is
/// narrower than `cfg.bracket_width`, when the midpoint stops moving, or (if
/// `stop_on_residual`) once `|f(mid) - target| <= cfg.entropy_tol`.
pub fn bisect_decreasing<F>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    target: f64,
    cfg: &SearchConfig,
    stop_on_residual: bool,
) -> Result<Bisection>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo < target - slack(target) || f_hi > target + slack(target) {
        return Err(Error::NoSolution(format!(
            "target {target} not bracketed by [{f_hi}, {f_lo}]"
        )));
    }

    let best = |lo: f64, f_lo: f64, hi: f64, f_hi: f64, iterations: usize| {
        let (root, value) = if (f_lo - target).abs() <= (f_hi - target).abs() {
            (lo, f_lo)
        } else {
            (hi, f_hi)
        };
        Bisection {
            root,
            residual: value - target,
            iterations,
        }
    };

    for iteration in 1..=cfg.max_bisection_iters {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            return Ok(best(lo, f_lo, hi, f_hi, iteration - 1));
        }
        let f_mid = f(mid);
        if f_mid > f_lo + slack(f_lo) || f_mid < f_hi - slack(f_hi) {
            return Err(Error::ConvergenceFailure {
                iterations: iteration,
                width: hi - lo,
            });
        }
        if stop_on_residual && (f_mid - target).abs() <= cfg.entropy_tol {
            return Ok(Bisection {
                root: mid,
                residual: f_mid - target,
                iterations: iteration,
            });
        }
        if f_mid >= target {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        if hi - lo < cfg.bracket_width {
            return Ok(best(lo, f_lo, hi, f_hi, iteration));
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: cfg.max_bisection_iters,
        width: hi - lo,
    })
}
