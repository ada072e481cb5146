//! Adaptive Simpson quadrature on finite intervals.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Function evaluations allowed before giving up.
pub const MAX_EVALS: usize = 2_000_000;
const MAX_DEPTH: usize = 50;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Refinement also stops once a panel's error estimate is at round-off level
/// relative to its value, so tolerances below the attainable precision do not
/// trigger exhaustive subdivision.
pub fn integrate<T: Scalar>(f: impl Fn(T) -> T, a: T, b: T, tol: T) -> Result<T> {
    let half = T::lit(0.5);
    let m = (a + b) * half;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    let mut evals = 3usize;
    let v = recurse(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH, &mut evals);
    if evals > MAX_EVALS {
        return Err(Error::Numerical(format!(
            "quadrature exceeded {MAX_EVALS} evaluations without reaching tolerance {tol}"
        )));
    }
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numerical("quadrature produced a non-finite value".into()))
    }
}

fn simpson<T: Scalar>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<T: Scalar>(
    f: &impl Fn(T) -> T,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: usize,
    evals: &mut usize,
) -> T {
    let half = T::lit(0.5);
    let m = (a + b) * half;
    let lm = (a + m) * half;
    let rm = (m + b) * half;
    let (flm, frm) = (f(lm), f(rm));
    *evals += 2;
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    let noise = T::lit(64.0) * T::epsilon() * (left.abs() + right.abs());
    if depth == 0 || *evals > MAX_EVALS || delta.abs() <= (T::lit(15.0) * tol).max(noise) {
        return left + right + delta / T::lit(15.0);
    }
    recurse(f, a, m, fa, flm, fm, left, tol * half, depth - 1, evals)
        + recurse(f, m, b, fm, frm, fb, right, tol * half, depth - 1, evals)
}
