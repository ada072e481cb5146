//! Samplers for the random scale.

use rand::Rng;
use rand_distr::{Distribution, Exp1, Open01};

use crate::error::{Error, Result};
use crate::scalelaw::special::kanter_function;
use crate::scalelaw::{GgbmParams, ScaleLaw};

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::Domain(format!("speed γ must be positive, got {gamma}")));
    }
    Ok(())
}

/// Draw with survival `P(Ã ≥ r) = exp(−d r^θ)`, scaled by `γ^{−1/θ}`.
pub fn sample_scale_weibull<R: Rng + ?Sized>(law: &ScaleLaw<f64>, gamma: f64, rng: &mut R) -> Result<f64> {
    check_gamma(gamma)?;
    let u: f64 = Open01.sample(rng);
    Ok(weibull_from_uniform(law, u) * gamma.powf(-1.0 / law.theta()))
}

/// Inverse survival transform `((−ln u)/d)^{1/θ}`.
pub fn weibull_from_uniform(law: &ScaleLaw<f64>, u: f64) -> f64 {
    (-u.ln() / law.d()).powf(1.0 / law.theta())
}

/// Draw `L` with density `M_β`.
///
/// `L = S^{−β}` for a one-sided β-stable `S`; with Kanter's representation
/// `S = (A(U)/E)^{(1−β)/β}` this is `L = (E/A(U))^{1−β}` with `U` uniform on
/// `(0, π)` and `E` standard exponential.
pub fn sample_mwright<R: Rng + ?Sized>(beta: f64, rng: &mut R) -> f64 {
    let u: f64 = Open01.sample(rng);
    let e: f64 = Exp1.sample(rng);
    let a = kanter_function(beta, std::f64::consts::PI * u);
    (e / a).powf(1.0 - beta)
}

/// Draw `L^ρ`.
pub fn sample_lbeta<R: Rng + ?Sized>(params: &GgbmParams<f64>, rng: &mut R) -> f64 {
    sample_mwright(params.beta(), rng).powf(params.rho())
}
