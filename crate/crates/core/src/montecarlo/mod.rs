//! Monte Carlo estimation of exit probabilities and empirical decay curves.
//!
//! At speed `γ` the simulated process is `Z = A_γ·γ^{−1/2}X + b̂` (shared
//! scale) or `Z_i = A_{γ,i}·γ^{−1/2}X_i + b̂_i` (per-component scales), with
//! `A_γ = γ^{−1/θ}Ã`. Exit is tested on the simulation grid.
//!
//! Runs in `f64` only.

pub mod paths;
pub mod sampling;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decay::ExitEvent;
use crate::error::{Error, Result};
use crate::kernels::{JitterPolicy, KernelSpec, TimeGrid};
use crate::scalelaw::{ggbm_scale_law, GgbmParams, ScaleLaw};

pub use paths::{sample_gaussian_paths, GaussianSampler, Scratch};
pub use sampling::{sample_lbeta, sample_mwright, sample_scale_weibull, weibull_from_uniform};

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;
/// Scenarios drawn from one random stream.
pub const BATCH_SIZE: usize = 8192;

/// Distribution of the unscaled random factor `Ã`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleSource {
    /// Survival `exp(−d r^θ)`.
    Weibull(ScaleLaw<f64>),
    /// `(L^β)^ρ` with M-Wright distributed `L^β`.
    LBeta(GgbmParams<f64>),
    /// Deterministic `a`, not rescaled with `γ`.
    Fixed(f64),
}

impl ScaleSource {
    /// The `(d, θ)` pair of the source, when it has one.
    pub fn law(&self) -> Option<ScaleLaw<f64>> {
        match self {
            ScaleSource::Weibull(l) => Some(*l),
            ScaleSource::LBeta(p) => Some(ggbm_scale_law(p)),
            ScaleSource::Fixed(_) => None,
        }
    }

    fn validate(&self) -> Result<()> {
        if let ScaleSource::Fixed(a) = self {
            if !(*a >= 0.0) || !a.is_finite() {
                return Err(Error::config("scale", format!("fixed scale must be ≥ 0, got {a}")));
            }
        }
        Ok(())
    }

    /// `A_γ`.
    pub fn sample<R: Rng + ?Sized>(&self, gamma: f64, rng: &mut R) -> Result<f64> {
        match self {
            ScaleSource::Weibull(l) => sample_scale_weibull(l, gamma, rng),
            ScaleSource::LBeta(p) => {
                let theta = ggbm_scale_law(p).theta();
                Ok(sample_lbeta(p, rng) * gamma.powf(-1.0 / theta))
            }
            ScaleSource::Fixed(a) => Ok(*a),
        }
    }
}

/// Shared or per-component random scales.
#[derive(Debug, Clone, PartialEq)]
pub enum SimModel {
    Shared(ScaleSource),
    Hadamard(Vec<ScaleSource>),
}

impl SimModel {
    fn validate(&self, p: usize) -> Result<()> {
        match self {
            SimModel::Shared(s) => s.validate(),
            SimModel::Hadamard(v) => {
                if v.len() != p {
                    return Err(Error::config(
                        "scales",
                        format!("per-component model needs {p} scale sources, got {}", v.len()),
                    ));
                }
                v.iter().try_for_each(|s| s.validate())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Simulation grid; should contain the origin.
    pub grid: TimeGrid<f64>,
    /// Strictly increasing positive speeds.
    pub gammas: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.gammas.is_empty() {
            return Err(Error::config("gammas", "need at least one speed"));
        }
        if self.gammas.iter().any(|&g| !(g > 0.0) || !g.is_finite()) {
            return Err(Error::config("gammas", "speeds must be positive"));
        }
        if self.gammas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("gammas", "speeds must be strictly increasing"));
        }
        if self.samples == 0 {
            return Err(Error::config("samples", "must be at least 1"));
        }
        Ok(())
    }
}

/// Estimated exit probability at one speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateRow {
    pub gamma: f64,
    pub samples: usize,
    pub exits: usize,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// `(1/γ) ln p̂`, undefined when `p̂ = 0`.
    pub log_rate: Option<f64>,
}

/// Wilson score interval for `k` successes out of `n`.
pub fn wilson_interval(k: usize, n: usize, z: f64) -> (f64, f64) {
    let nf = n as f64;
    let p = k as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = z / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    let lo = if k == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if k == n { 1.0 } else { (center + half).min(1.0) };
    (lo.min(p), hi.max(p))
}

impl EstimateRow {
    pub fn new(gamma: f64, exits: usize, samples: usize) -> Self {
        let p_hat = exits as f64 / samples as f64;
        let (ci_low, ci_high) = wilson_interval(exits, samples, Z_95);
        EstimateRow {
            gamma,
            samples,
            exits,
            p_hat,
            ci_low,
            ci_high,
            log_rate: (exits > 0).then(|| p_hat.ln() / gamma),
        }
    }
}

/// Random stream of one batch: keyed by master seed, speed index and batch
/// index, so counts do not depend on how batches are scheduled.
pub fn batch_rng(seed: u64, gamma_index: usize, batch: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((gamma_index as u64) << 40) | batch as u64);
    rng
}

fn exits(exit: &ExitEvent<f64>, shift_on_grid: &[Vec<f64>], z: &[Vec<f64>], scales: &[f64], noise: f64) -> bool {
    let n = z[0].len();
    match exit {
        ExitEvent::Halfspace(h) => {
            let xi = h.xi();
            (0..n).any(|k| {
                let s: f64 = (0..xi.len())
                    .map(|i| xi[i] * (scales[i] * noise * z[i][k] + shift_on_grid[i][k]))
                    .sum();
                s >= h.level()
            })
        }
        ExitEvent::Quadrant(q) => (0..q.dim()).all(|i| {
            let x = q.levels()[i];
            (0..n).any(|k| scales[i] * noise * z[i][k] + shift_on_grid[i][k] >= x)
        }),
    }
}

/// Estimates the exit probability at every speed of `config`.
pub fn estimate_exit_prob(
    config: &SimConfig,
    exit: &ExitEvent<f64>,
    model: &SimModel,
    kernels: &[KernelSpec<f64>],
) -> Result<Vec<EstimateRow>> {
    config.validate()?;
    let p = exit.dim();
    model.validate(p)?;
    if kernels.len() != p {
        return Err(Error::Usage(format!("{} kernels for a {p}-component exit", kernels.len())));
    }
    if config.grid.horizon() != exit.horizon() {
        return Err(Error::config("grid", "simulation grid and exit horizons differ"));
    }
    let sampler = GaussianSampler::new(kernels, &config.grid, &JitterPolicy::default())?;
    let shift_on_grid: Vec<Vec<f64>> = (0..p)
        .map(|i| config.grid.points().iter().map(|&t| exit.shift().component(i, t)).collect())
        .collect();
    let mut rows = Vec::with_capacity(config.gammas.len());
    let mut z = vec![Vec::new(); p];
    let mut scratch = Scratch::default();
    let mut scales = vec![0.0; p];
    for (gi, &gamma) in config.gammas.iter().enumerate() {
        let noise = gamma.powf(-0.5);
        let mut count = 0usize;
        let batches = config.samples.div_ceil(BATCH_SIZE);
        for b in 0..batches {
            let mut rng = batch_rng(config.seed, gi, b);
            let size = BATCH_SIZE.min(config.samples - b * BATCH_SIZE);
            for _ in 0..size {
                match model {
                    SimModel::Shared(s) => scales.fill(s.sample(gamma, &mut rng)?),
                    SimModel::Hadamard(v) => {
                        for (slot, s) in scales.iter_mut().zip(v) {
                            *slot = s.sample(gamma, &mut rng)?;
                        }
                    }
                }
                sampler.sample_into(&mut rng, &mut z, &mut scratch);
                if exits(exit, &shift_on_grid, &z, &scales, noise) {
                    count += 1;
                }
            }
        }
        rows.push(EstimateRow::new(gamma, count, config.samples));
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub gamma: f64,
    /// `−(1/γ) ln p̂`.
    pub rate: f64,
    /// `|rate − w_ref| / w_ref`.
    pub rel_error: f64,
}

/// Empirical decay rates against a reference `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayCurve {
    pub w_ref: f64,
    pub points: Vec<CurvePoint>,
    /// Relative error non-increasing along the usable speeds.
    pub converging: bool,
    /// Empirical rate non-decreasing along the usable speeds.
    pub rate_increasing: bool,
}

/// Builds the decay curve from the rows with a defined log rate.
pub fn decay_curve(rows: &[EstimateRow], w_ref: f64) -> Result<DecayCurve> {
    if !(w_ref > 0.0) || !w_ref.is_finite() {
        return Err(Error::Domain(format!("reference rate must be positive, got {w_ref}")));
    }
    let points: Vec<CurvePoint> = rows
        .iter()
        .filter_map(|r| {
            r.log_rate.map(|lr| CurvePoint {
                gamma: r.gamma,
                rate: -lr,
                rel_error: (-lr - w_ref).abs() / w_ref,
            })
        })
        .collect();
    if points.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 2 speeds with p̂ > 0, got {}",
            points.len()
        )));
    }
    let converging = points.windows(2).all(|w| w[1].rel_error <= w[0].rel_error);
    let rate_increasing = points.windows(2).all(|w| w[1].rate >= w[0].rate);
    Ok(DecayCurve {
        w_ref,
        points,
        converging,
        rate_increasing,
    })
}
