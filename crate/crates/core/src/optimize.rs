//! One-dimensional minimization: downhill bracketing, golden-section search
//! and the scan-then-refine driver used for exit-time searches.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of a one-dimensional minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<T> {
    pub x: T,
    pub value: T,
}

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Stops when the bracket is narrower than `tol` or after `max_iter`
/// reductions. The endpoints themselves are never evaluated.
pub fn golden_section<T: Scalar>(
    f: impl Fn(T) -> T,
    mut a: T,
    mut b: T,
    tol: T,
    max_iter: usize,
) -> Minimum<T> {
    let r = T::lit(INV_PHI);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        Minimum { x: x1, value: f1 }
    } else {
        Minimum { x: x2, value: f2 }
    }
}

/// Expands a bracket `[lo, hi]` around a minimum of a unimodal function on
/// the whole real line, starting from `x0` with initial step `step`.
pub fn bracket_downhill<T: Scalar>(
    f: impl Fn(T) -> T,
    x0: T,
    step: T,
    max_expansions: usize,
) -> Result<(T, T)> {
    let two = T::lit(2.0);
    let f0 = f(x0);
    let fr = f(x0 + step);
    let fl = f(x0 - step);
    if fl >= f0 && fr >= f0 {
        return Ok((x0 - step, x0 + step));
    }
    // walk towards the smaller neighbour, doubling the stride
    let dir = if fr < fl { T::one() } else { -T::one() };
    let mut prev = x0;
    let mut cur = x0 + dir * step;
    let mut f_cur = if dir > T::zero() { fr } else { fl };
    let mut stride = step;
    for _ in 0..max_expansions {
        stride *= two;
        let next = cur + dir * stride;
        let f_next = f(next);
        if !f_next.is_finite() || f_next >= f_cur {
            return Ok(if dir > T::zero() { (prev, next) } else { (next, prev) });
        }
        prev = cur;
        cur = next;
        f_cur = f_next;
    }
    Err(Error::Numerical(format!(
        "no bracketing interval found after {max_expansions} expansions"
    )))
}

/// Settings of the scan-then-refine time search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Uniform scan points on `(0, T]`.
    pub scan_points: usize,
    /// Golden-section tolerance relative to the horizon.
    pub rel_time_tol: f64,
    pub max_iter: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            scan_points: 512,
            rel_time_tol: 1e-10,
            max_iter: 200,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.scan_points < 2 {
            return Err(Error::config("scan_points", "must be at least 2"));
        }
        if !(self.rel_time_tol > 0.0 && self.rel_time_tol < 1.0) {
            return Err(Error::config("rel_time_tol", "must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Minimizes `f` over `(0, horizon]`.
///
/// A uniform scan locates the best grid point (ties go to the smallest
/// time); golden-section search then refines inside the neighbouring grid
/// cells. The refined point replaces the scan point only when it is
/// strictly better.
pub fn minimize_on_horizon<T: Scalar>(
    f: impl Fn(T) -> T,
    horizon: T,
    cfg: &OptimizerConfig,
) -> Minimum<T> {
    let n = cfg.scan_points;
    let h = horizon / T::lit(n as f64);
    let at = |k: usize| if k == n { horizon } else { h * T::lit(k as f64) };
    let mut best_k = 1;
    let mut best = f(at(1));
    for k in 2..=n {
        let v = f(at(k));
        if v < best {
            best = v;
            best_k = k;
        }
    }
    let lo = at(best_k - 1);
    let hi = at((best_k + 1).min(n));
    let tol = horizon * T::lit(cfg.rel_time_tol);
    let refined = golden_section(&f, lo, hi, tol, cfg.max_iter);
    let scan_min = Minimum { x: at(best_k), value: best };
    let mut out = if refined.value < scan_min.value { refined } else { scan_min };
    // the golden-section iterates never touch the interval ends
    if best_k == n && f(horizon) <= out.value {
        out = Minimum { x: horizon, value: f(horizon) };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_vertex() {
        let m = golden_section(|x: f64| (x - 0.3).powi(2) + 1.0, -2.0, 5.0, 1e-12, 500);
        assert!((m.x - 0.3).abs() < 1e-7);
        assert!((m.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bracket_contains_minimum_far_from_start() {
        let f = |x: f64| (x - 40.0).powi(2);
        let (lo, hi) = bracket_downhill(f, 0.0, 0.5, 60).unwrap();
        assert!(lo < 40.0 && 40.0 < hi);
        let (lo, hi) = bracket_downhill(|x: f64| (x + 7.0).abs(), 0.0, 0.1, 60).unwrap();
        assert!(lo < -7.0 && -7.0 < hi);
    }

    #[test]
    fn bracket_fails_for_monotone_function() {
        assert!(bracket_downhill(|x: f64| -x, 0.0, 1.0, 20).is_err());
    }

    #[test]
    fn horizon_search_returns_endpoint_for_decreasing_objective() {
        let m = minimize_on_horizon(|t: f64| 1.0 / t, 1.0, &OptimizerConfig::default());
        assert_eq!(m.x, 1.0);
        assert_eq!(m.value, 1.0);
    }

    #[test]
    fn horizon_search_refines_interior_minimum() {
        // (1 + 2t)^2 / t has its minimum at t = 0.5 exactly
        let f = |t: f64| (1.0 + 2.0 * t).powi(2) / t;
        let cfg = OptimizerConfig { scan_points: 7, ..Default::default() };
        let m = minimize_on_horizon(f, 1.0, &cfg);
        assert!((m.x - 0.5).abs() < 1e-6, "{}", m.x);
        assert!((m.value - 8.0).abs() < 1e-12);
    }

    #[test]
    fn horizon_search_breaks_ties_towards_small_times() {
        let f = |t: f64| if t < 0.5 { 1.0 } else { 2.0 };
        let cfg = OptimizerConfig { scan_points: 10, ..Default::default() };
        let m = minimize_on_horizon(f, 1.0, &cfg);
        assert!((m.x - 0.1).abs() < 1e-15);
    }
}
