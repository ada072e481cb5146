//! Deterministic shift `b̂` added to the scaled Gaussian process.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `b̂ : [0, T] → ℝ^p`.
#[derive(Debug, Clone, PartialEq)]
pub enum Shift<T> {
    /// `b̂(t) = c`.
    Constant(Vec<T>),
    /// `b̂(t) = intercept + slope·t`.
    Affine { intercept: Vec<T>, slope: Vec<T> },
    /// Sampled table, linearly interpolated and held constant outside the
    /// sampled range. `values[i][j]` is component `i` at `times[j]`.
    Table { times: Vec<T>, values: Vec<Vec<T>> },
}

impl<T: Scalar> Shift<T> {
    pub fn zero(p: usize) -> Self {
        Shift::Constant(vec![T::zero(); p])
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: &[T]| v.iter().all(|x| x.is_finite());
        match self {
            Shift::Constant(c) => {
                if c.is_empty() || !finite(c) {
                    return Err(Error::config("shift", "constant needs p ≥ 1 finite values"));
                }
            }
            Shift::Affine { intercept, slope } => {
                if intercept.is_empty() || intercept.len() != slope.len() {
                    return Err(Error::config("shift", "intercept and slope must both have p entries"));
                }
                if !finite(intercept) || !finite(slope) {
                    return Err(Error::config("shift", "affine coefficients must be finite"));
                }
            }
            Shift::Table { times, values } => {
                if times.is_empty() || values.is_empty() {
                    return Err(Error::config("shift", "table needs times and p value rows"));
                }
                if times.windows(2).any(|w| w[0] >= w[1]) || !finite(times) {
                    return Err(Error::config("shift", "table times must be strictly increasing"));
                }
                if values.iter().any(|row| row.len() != times.len() || !finite(row)) {
                    return Err(Error::config("shift", "every table row needs one finite value per time"));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            Shift::Constant(c) => c.len(),
            Shift::Affine { intercept, .. } => intercept.len(),
            Shift::Table { values, .. } => values.len(),
        }
    }

    /// Component `i` of `b̂(t)`.
    pub fn component(&self, i: usize, t: T) -> T {
        match self {
            Shift::Constant(c) => c[i],
            Shift::Affine { intercept, slope } => intercept[i] + slope[i] * t,
            Shift::Table { times, values } => interpolate(times, &values[i], t),
        }
    }

    pub fn eval(&self, t: T) -> Vec<T> {
        (0..self.dim()).map(|i| self.component(i, t)).collect()
    }

    /// Times in `[0, horizon]` where the piecewise-linear shift can attain
    /// its extremes: the two ends and every interior table knot.
    pub fn breakpoints(&self, horizon: T) -> Vec<T> {
        let mut pts = vec![T::zero(), horizon];
        if let Shift::Table { times, .. } = self {
            pts.extend(times.iter().copied().filter(|&t| t > T::zero() && t < horizon));
        }
        pts
    }
}

fn interpolate<T: Scalar>(times: &[T], vals: &[T], t: T) -> T {
    let n = times.len();
    if t <= times[0] {
        return vals[0];
    }
    if t >= times[n - 1] {
        return vals[n - 1];
    }
    let j = times.partition_point(|&s| s <= t);
    let (t0, t1) = (times[j - 1], times[j]);
    let w = (t - t0) / (t1 - t0);
    vals[j - 1] + w * (vals[j] - vals[j - 1])
}
