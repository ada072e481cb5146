//! Centered Gaussian paths with independent fBm components.

use std::sync::Arc;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::kernels::{factor_psd, gram, JitterPolicy, KernelSpec, TimeGrid};

/// Eigenvalues of the circulant embedding below `−EMBEDDING_TOL·λ_max`
/// reject the spectral method.
const EMBEDDING_TOL: f64 = 1e-10;

enum Method {
    /// Cumulative sums of independent increments (Brownian kernel).
    Increments { sd: Vec<f64> },
    /// Circulant embedding of the stationary increments on a uniform grid.
    Spectral {
        fft: Arc<dyn Fft<f64>>,
        /// `sqrt(λ_k / 2M)` for the `M = 2n` embedding.
        weights: Vec<f64>,
    },
    /// Dense Cholesky factor of the Gram on the nonzero grid points.
    Cholesky { lower: DMatrix<f64> },
}

/// Generator of one component on a fixed grid.
struct ComponentSampler {
    method: Method,
}

/// Draws `p` independent components on a grid; the value at `t = 0` is 0.
pub struct GaussianSampler {
    components: Vec<ComponentSampler>,
    points: Vec<f64>,
    /// Index of the first nonzero grid point.
    first: usize,
}

impl std::fmt::Debug for GaussianSampler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let methods: Vec<&str> = self
            .components
            .iter()
            .map(|c| match c.method {
                Method::Increments { .. } => "increments",
                Method::Spectral { .. } => "spectral",
                Method::Cholesky { .. } => "cholesky",
            })
            .collect();
        f.debug_struct("GaussianSampler")
            .field("methods", &methods)
            .field("points", &self.points.len())
            .finish()
    }
}

/// Autocovariance of the increments of fBm with step `h`.
fn increment_autocov(alpha: f64, h: f64, k: usize) -> f64 {
    let k = k as f64;
    let pw = |x: f64| if x == 0.0 { 0.0 } else { x.powf(alpha) };
    0.5 * h.powf(alpha) * (pw(k + 1.0) - 2.0 * pw(k) + pw((k - 1.0).abs()))
}

fn spectral(alpha: f64, h: f64, n: usize) -> Option<Method> {
    let m = 2 * n;
    let mut c: Vec<Complex<f64>> = (0..m)
        .map(|j| {
            let k = if j <= n { j } else { m - j };
            Complex::new(increment_autocov(alpha, h, k), 0.0)
        })
        .collect();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    fft.process(&mut c);
    let lmax = c.iter().fold(0.0f64, |a, v| a.max(v.re));
    if c.iter().any(|v| v.re < -EMBEDDING_TOL * lmax) {
        return None;
    }
    let weights = c.iter().map(|v| (v.re.max(0.0) / (2.0 * m as f64)).sqrt()).collect();
    Some(Method::Spectral { fft, weights })
}

impl GaussianSampler {
    /// Picks the cheapest exact method per component: increments for the
    /// Brownian kernel, circulant embedding on uniform grids that start at
    /// the origin, Cholesky otherwise.
    pub fn new(kernels: &[KernelSpec<f64>], grid: &TimeGrid<f64>, jitter: &JitterPolicy) -> Result<Self> {
        if kernels.is_empty() {
            return Err(Error::config("kernels", "need at least one component"));
        }
        let points = grid.points().to_vec();
        let first = usize::from(grid.contains_origin());
        let nonzero = &points[first..];
        if nonzero.is_empty() {
            return Err(Error::config("grid", "needs a point after the origin"));
        }
        let uniform = grid.contains_origin() && grid.is_uniform();
        let mut components = Vec::with_capacity(kernels.len());
        for k in kernels {
            let alpha = k.alpha();
            let method = if alpha == 1.0 {
                let mut prev = 0.0;
                let sd = nonzero
                    .iter()
                    .map(|&t| {
                        let s = (t - prev).sqrt();
                        prev = t;
                        s
                    })
                    .collect();
                Method::Increments { sd }
            } else {
                let h = nonzero[0];
                let fast = if uniform { spectral(alpha, h, nonzero.len()) } else { None };
                match fast {
                    Some(m) => m,
                    None => {
                        let g = gram(k, &grid.without_origin()?);
                        Method::Cholesky {
                            lower: factor_psd(&g, jitter)?.lower,
                        }
                    }
                }
            };
            components.push(ComponentSampler { method });
        }
        Ok(GaussianSampler {
            components,
            points,
            first,
        })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Fills `out[i]` (one buffer per component, grid length each) with a
    /// fresh draw.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [Vec<f64>], scratch: &mut Scratch) {
        for (comp, buf) in self.components.iter().zip(out.iter_mut()) {
            buf.resize(self.points.len(), 0.0);
            buf[..self.first].fill(0.0);
            let tail = &mut buf[self.first..];
            match &comp.method {
                Method::Increments { sd } => {
                    let mut acc = 0.0;
                    for (v, &s) in tail.iter_mut().zip(sd) {
                        let z: f64 = rng.sample(StandardNormal);
                        acc += s * z;
                        *v = acc;
                    }
                }
                Method::Spectral { fft, weights } => {
                    let m = weights.len();
                    let n = m / 2;
                    let w = &mut scratch.complex;
                    w.resize(m, Complex::new(0.0, 0.0));
                    w[0] = Complex::new(weights[0] * 2f64.sqrt() * rng.sample::<f64, _>(StandardNormal), 0.0);
                    w[n] = Complex::new(weights[n] * 2f64.sqrt() * rng.sample::<f64, _>(StandardNormal), 0.0);
                    for k in 1..n {
                        let a: f64 = rng.sample(StandardNormal);
                        let b: f64 = rng.sample(StandardNormal);
                        w[k] = Complex::new(weights[k] * a, weights[k] * b);
                        w[m - k] = Complex::new(weights[k] * a, -weights[k] * b);
                    }
                    fft.process(w);
                    let mut acc = 0.0;
                    for (v, z) in tail.iter_mut().zip(w.iter()) {
                        acc += z.re;
                        *v = acc;
                    }
                }
                Method::Cholesky { lower } => {
                    let z = &mut scratch.real;
                    z.clear();
                    z.extend((0..tail.len()).map(|_| rng.sample::<f64, _>(StandardNormal)));
                    for (j, v) in tail.iter_mut().enumerate() {
                        let row = lower.row(j);
                        *v = (0..=j).map(|l| row[l] * z[l]).sum();
                    }
                }
            }
        }
    }
}

/// Reusable buffers for [`GaussianSampler::sample_into`].
#[derive(Debug, Default)]
pub struct Scratch {
    complex: Vec<Complex<f64>>,
    real: Vec<f64>,
}

/// `n_paths` independent draws, indexed `[path][component][time]`.
pub fn sample_gaussian_paths<R: Rng + ?Sized>(
    kernels: &[KernelSpec<f64>],
    grid: &TimeGrid<f64>,
    n_paths: usize,
    rng: &mut R,
) -> Result<Vec<Vec<Vec<f64>>>> {
    let sampler = GaussianSampler::new(kernels, grid, &JitterPolicy::default())?;
    let mut scratch = Scratch::default();
    Ok((0..n_paths)
        .map(|_| {
            let mut out = vec![Vec::new(); kernels.len()];
            sampler.sample_into(rng, &mut out, &mut scratch);
            out
        })
        .collect())
}
