//! Covariance kernels of the independent Gaussian components, their Gram
//! matrices on time grids, and jittered Cholesky factors for simulation.

use nalgebra::{Cholesky, DMatrix};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Kernel families with a built-in evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFamily {
    /// Fractional Brownian motion with Hurst parameter `alpha / 2`.
    Fbm,
}

/// Covariance kernel of one component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec<T> {
    family: KernelFamily,
    alpha: T,
}

impl<T: Scalar> KernelSpec<T> {
    /// Fractional Brownian motion kernel `½(t^α + s^α − |t−s|^α)`.
    pub fn fbm(alpha: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::lit(2.0)) {
            return Err(Error::config(
                "alpha",
                format!("fBm exponent must lie in (0, 2), got {alpha}"),
            ));
        }
        Ok(KernelSpec {
            family: KernelFamily::Fbm,
            alpha,
        })
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Covariance between the component at times `t` and `s`.
    #[inline]
    pub fn eval(&self, t: T, s: T) -> T {
        match self.family {
            KernelFamily::Fbm => {
                let a = self.alpha;
                T::lit(0.5) * (pow0(t, a) + pow0(s, a) - pow0((t - s).abs(), a))
            }
        }
    }

    /// Variance `k(t, t)`.
    #[inline]
    pub fn variance(&self, t: T) -> T {
        match self.family {
            KernelFamily::Fbm => pow0(t, self.alpha),
        }
    }
}

// powf with 0^a = 0 for a > 0 (ln-based powf implementations can return NaN)
#[inline]
fn pow0<T: Scalar>(x: T, a: T) -> T {
    if x == T::zero() {
        T::zero()
    } else {
        x.powf(a)
    }
}

/// Covariance of `spec` at `(t, s)`.
pub fn eval_kernel<T: Scalar>(spec: &KernelSpec<T>, t: T, s: T) -> T {
    spec.eval(t, s)
}

/// A strictly increasing set of times in `[0, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid<T> {
    horizon: T,
    points: Vec<T>,
}

impl<T: Scalar> TimeGrid<T> {
    pub fn new(horizon: T, points: Vec<T>) -> Result<Self> {
        if !(horizon > T::zero()) || !horizon.is_finite() {
            return Err(Error::config("horizon", "must be a positive finite time"));
        }
        if points.is_empty() {
            return Err(Error::config("grid", "must contain at least one point"));
        }
        if points.iter().any(|&p| p < T::zero() || p > horizon || !p.is_finite()) {
            return Err(Error::config("grid", "points must lie in [0, T]"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("grid", "points must be strictly increasing"));
        }
        Ok(TimeGrid { horizon, points })
    }

    /// `m` uniform points `T/m, 2T/m, …, T` (the origin is excluded).
    pub fn uniform(horizon: T, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::config("grid points", "must be positive"));
        }
        let h = horizon / T::lit(m as f64);
        let points = (1..=m)
            .map(|k| if k == m { horizon } else { h * T::lit(k as f64) })
            .collect();
        Self::new(horizon, points)
    }

    /// `0, T/n, …, T`: the simulation grid with the starting point.
    pub fn uniform_with_origin(horizon: T, n: usize) -> Result<Self> {
        let mut g = Self::uniform(horizon, n)?;
        g.points.insert(0, T::zero());
        Ok(g)
    }

    pub fn horizon(&self) -> T {
        self.horizon
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains_origin(&self) -> bool {
        self.points[0] == T::zero()
    }

    /// Whether consecutive points (including the origin when present) are
    /// equally spaced up to a relative tolerance of `1e-12`.
    pub fn is_uniform(&self) -> bool {
        if self.points.len() < 2 {
            return true;
        }
        let h = self.points[1] - self.points[0];
        let tol = T::lit(1e-12) * self.horizon;
        self.points.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= tol)
    }

    /// Copy of this grid without the origin.
    pub fn without_origin(&self) -> Result<Self> {
        let points: Vec<T> = self.points.iter().copied().filter(|&p| p > T::zero()).collect();
        Self::new(self.horizon, points)
    }
}

/// Gram matrix `G[j][l] = k(t_j, t_l)` on the grid.
pub fn gram<T: Scalar>(spec: &KernelSpec<T>, grid: &TimeGrid<T>) -> DMatrix<T> {
    let pts = grid.points();
    let n = pts.len();
    let mut g = DMatrix::zeros(n, n);
    for j in 0..n {
        g[(j, j)] = spec.variance(pts[j]);
        for l in 0..j {
            let v = spec.eval(pts[j], pts[l]);
            g[(j, l)] = v;
            g[(l, j)] = v;
        }
    }
    g
}

/// Diagonal loading schedule for near-singular Gram matrices.
///
/// Attempt `k` adds `start · factor^k · mean(diag)` to the diagonal; the
/// first attempt is made without any loading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JitterPolicy {
    pub start: f64,
    pub factor: f64,
    pub max: f64,
}

impl Default for JitterPolicy {
    fn default() -> Self {
        JitterPolicy {
            start: 1e-12,
            factor: 10.0,
            max: 1e-6,
        }
    }
}

/// Lower-triangular `L` with `L·Lᵀ ≈ G`.
#[derive(Debug, Clone)]
pub struct PsdFactor<T: Scalar> {
    pub lower: DMatrix<T>,
    /// Relative jitter ε that made the factorization succeed (0 when none).
    pub jitter: T,
}

/// Cholesky factor of a symmetric PSD matrix, escalating diagonal jitter
/// when the plain factorization fails.
pub fn factor_psd<T: Scalar>(g: &DMatrix<T>, policy: &JitterPolicy) -> Result<PsdFactor<T>> {
    if !g.is_square() {
        return Err(Error::Usage("factor_psd needs a square matrix".into()));
    }
    let n = g.nrows();
    if n == 0 {
        return Ok(PsdFactor {
            lower: DMatrix::zeros(0, 0),
            jitter: T::zero(),
        });
    }
    let mean_diag = g.diagonal().sum() / T::lit(n as f64);
    let scale = if mean_diag > T::zero() { mean_diag } else { T::one() };
    let mut eps = 0.0f64;
    let mut attempt = 0i32;
    loop {
        let mut m = g.clone();
        if eps > 0.0 {
            let add = T::lit(eps) * scale;
            for i in 0..n {
                m[(i, i)] += add;
            }
        }
        if let Some(ch) = Cholesky::new(m) {
            let lower = ch.unpack();
            if lower.iter().all(|v| v.is_finite()) {
                return Ok(PsdFactor {
                    lower,
                    jitter: T::lit(eps),
                });
            }
        }
        let next = policy.start * policy.factor.powi(attempt);
        attempt += 1;
        if next > policy.max * (1.0 + 1e-9) {
            return Err(Error::Numerical(format!(
                "Cholesky factorization failed; final relative jitter {eps:e}"
            )));
        }
        // snap to the cap so the reported jitter is exactly `max`
        eps = if (next / policy.max - 1.0).abs() < 1e-9 { policy.max } else { next };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{dmatrix, SymmetricEigen};
    use proptest::prelude::*;

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    #[test]
    fn eval_examples() {
        let bm = KernelSpec::fbm(1.0).unwrap();
        assert_eq!(bm.eval(0.5, 1.0), 0.5);
        for a in [0.3f64, 0.8, 1.0, 1.7] {
            assert!((KernelSpec::fbm(a).unwrap().eval(1.0, 1.0) - 1.0).abs() < 1e-15);
        }
        // ½(1 + 2 − √3)
        let k = KernelSpec::fbm(0.5f64).unwrap();
        assert!((k.eval(1.0, 4.0) - 0.633_974_596_215_561_3).abs() < 1e-15);
    }

    #[test]
    fn vanishes_only_at_double_origin() {
        for a in [0.4, 1.0, 1.6] {
            let k = KernelSpec::fbm(a).unwrap();
            assert_eq!(k.eval(0.0, 0.0), 0.0);
            assert_eq!(k.variance(0.0), 0.0);
        }
    }

    #[test]
    fn rejects_bad_alpha() {
        for a in [0.0, 2.0, -1.0, f64::NAN] {
            assert!(matches!(KernelSpec::fbm(a), Err(Error::Config { .. })));
        }
    }

    #[test]
    fn gram_examples() {
        let bm = KernelSpec::fbm(1.0).unwrap();
        let grid = TimeGrid::new(1.0, vec![0.5, 1.0]).unwrap();
        assert_eq!(gram(&bm, &grid), dmatrix![0.5, 0.5; 0.5, 1.0]);
        let k = KernelSpec::fbm(0.7).unwrap();
        let g = gram(&k, &TimeGrid::new(2.0, vec![1.3]).unwrap());
        assert_eq!(g[(0, 0)], 1.3f64.powf(0.7));
    }

    #[test]
    fn gram_on_uniform_grid_is_psd() {
        let k = KernelSpec::fbm(0.8).unwrap();
        let g = gram(&k, &TimeGrid::uniform(1.0, 20).unwrap());
        let eig = SymmetricEigen::new(g).eigenvalues;
        let hi = eig.max();
        assert!(eig.min() >= -1e-10 * hi);
    }

    #[test]
    fn grid_validation() {
        assert!(TimeGrid::new(1.0, vec![0.5, 0.5]).is_err());
        assert!(TimeGrid::new(1.0, vec![0.5, 1.5]).is_err());
        assert!(TimeGrid::<f64>::new(1.0, vec![]).is_err());
        let g = TimeGrid::uniform_with_origin(2.0, 4).unwrap();
        assert_eq!(g.points(), &[0.0, 0.5, 1.0, 1.5, 2.0]);
        assert!(g.is_uniform() && g.contains_origin());
        assert_eq!(g.without_origin().unwrap().len(), 4);
    }

    #[test]
    fn factor_identity() {
        let f = factor_psd(&DMatrix::<f64>::identity(4, 4), &JitterPolicy::default()).unwrap();
        assert_eq!(f.lower, DMatrix::identity(4, 4));
        assert_eq!(f.jitter, 0.0);
    }

    #[test]
    fn factor_brownian_gram() {
        let g = dmatrix![0.5, 0.5; 0.5, 1.0];
        let f = factor_psd(&g, &JitterPolicy::default()).unwrap();
        let err = max_abs(&(&f.lower * f.lower.transpose() - &g));
        assert!(err <= 1e-12);
    }

    #[test]
    fn factor_rank_deficient_needs_jitter() {
        let g = dmatrix![1.0, 1.0; 1.0, 1.0];
        let f = factor_psd(&g, &JitterPolicy::default()).unwrap();
        assert!(f.jitter > 0.0);
        let err = max_abs(&(&f.lower * f.lower.transpose() - &g));
        assert!(err <= 1e-8, "{err}");
    }

    #[test]
    fn factor_reports_final_jitter_on_failure() {
        let g = dmatrix![1.0, 0.0; 0.0, -1.0];
        match factor_psd(&g, &JitterPolicy::default()) {
            Err(Error::Numerical(msg)) => assert!(msg.contains("1e-6"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn symmetric_and_brownian_limit(t in 0.0f64..3.0, s in 0.0f64..3.0, a in 0.05f64..1.95) {
            let k = KernelSpec::fbm(a).unwrap();
            prop_assert_eq!(k.eval(t, s), k.eval(s, t));
            let bm = KernelSpec::fbm(1.0).unwrap();
            prop_assert!((bm.eval(t, s) - t.min(s)).abs() <= 4.0 * f64::EPSILON * t.max(s).max(1.0));
        }

        #[test]
        fn variance_strictly_increasing(t in 1e-6f64..3.0, dt in 1e-6f64..1.0, a in 0.05f64..1.95) {
            let k = KernelSpec::fbm(a).unwrap();
            prop_assert!(k.variance(t + dt) > k.variance(t));
        }

        #[test]
        fn random_grams_are_psd(
            mut pts in proptest::collection::btree_set(1u32..10_000, 2..50),
            ai in 0usize..5,
        ) {
            let alpha = [0.4, 0.8, 1.0, 1.2, 1.6][ai];
            let times: Vec<f64> = std::mem::take(&mut pts).into_iter().map(|p| p as f64 / 10_000.0).collect();
            let grid = TimeGrid::new(1.0, times).unwrap();
            let g = gram(&KernelSpec::fbm(alpha).unwrap(), &grid);
            let eig = SymmetricEigen::new(g).eigenvalues;
            prop_assert!(eig.min() >= -1e-10 * eig.max());
        }
    }
}
