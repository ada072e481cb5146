//! Scale laws `J(x) = d·x^θ` for the random scaling variable, the constant
//! `v(d, θ)` that collapses the infimum over the scale, and the
//! generalized-grey-Brownian-motion special case.

pub mod special;

use crate::error::{Error, Result};
use crate::optimize::{bracket_downhill, golden_section};
use crate::scalar::Scalar;

pub use special::{mittag_leffler, mwright_density, mwright_moment};

/// Rate `J(x) = d·x^θ` of the scaling variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleLaw<T> {
    d: T,
    theta: T,
}

impl<T: Scalar> ScaleLaw<T> {
    pub fn new(d: T, theta: T) -> Result<Self> {
        if !(d > T::zero()) || !d.is_finite() {
            return Err(Error::config("d", format!("must be positive, got {d}")));
        }
        if !(theta > T::zero()) || !theta.is_finite() {
            return Err(Error::config("theta", format!("must be positive, got {theta}")));
        }
        Ok(ScaleLaw { d, theta })
    }

    pub fn d(&self) -> T {
        self.d
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    /// Exponent `θ/(θ+2)` applied to half the squared RKHS norm.
    pub fn norm_exponent(&self) -> T {
        self.theta / (self.theta + T::lit(2.0))
    }
}

/// `v(d,θ) = 2^{θ/(θ+2)} ( d(dθ)^{−θ/(θ+2)} + ½(dθ)^{2/(θ+2)} )`.
pub fn v_const<T: Scalar>(law: &ScaleLaw<T>) -> T {
    let two = T::lit(2.0);
    let (d, th) = (law.d, law.theta);
    let dt = d * th;
    two.powf(th / (th + two))
        * (d * dt.powf(-th / (th + two)) + T::lit(0.5) * dt.powf(two / (th + two)))
}

/// `J(x) = d·x^θ` for `x ≥ 0`.
pub fn j_rate<T: Scalar>(law: &ScaleLaw<T>, x: T) -> Result<T> {
    if !(x >= T::zero()) {
        return Err(Error::Domain(format!("scale rate needs x ≥ 0, got {x}")));
    }
    if x == T::zero() {
        return Ok(T::zero());
    }
    Ok(law.d * x.powf(law.theta))
}

/// `inf_{a ≥ 0} { d·a^θ + S/(2a²) }`, found numerically.
///
/// The search runs over `u = ln a`, where the objective is convex. For
/// `S = 0` the infimum is attained at `a = 0` and equals 0.
pub fn scalar_profile<T: Scalar>(law: &ScaleLaw<T>, s: T) -> Result<T> {
    if !(s >= T::zero()) {
        return Err(Error::Domain(format!("squared norm must be ≥ 0, got {s}")));
    }
    if s == T::zero() {
        return Ok(T::zero());
    }
    let half_s = T::lit(0.5) * s;
    let (d, th) = (law.d, law.theta);
    let f = |u: T| d * (th * u).exp() + half_s * (T::lit(-2.0) * u).exp();
    let (lo, hi) = bracket_downhill(f, T::zero(), T::one(), 200)?;
    let m = golden_section(f, lo, hi, T::lit(1e-12), 400);
    Ok(m.value)
}

/// Parameters of the scale `(L^β)^ρ`, with `L^β` M-Wright distributed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GgbmParams<T> {
    beta: T,
    rho: T,
}

impl<T: Scalar> GgbmParams<T> {
    pub fn new(beta: T, rho: T) -> Result<Self> {
        if !(beta > T::zero() && beta < T::one()) {
            return Err(Error::config("beta", format!("must lie in (0, 1), got {beta}")));
        }
        if !(rho > T::zero()) || !rho.is_finite() {
            return Err(Error::config("rho", format!("must be positive, got {rho}")));
        }
        Ok(GgbmParams { beta, rho })
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn rho(&self) -> T {
        self.rho
    }
}

/// Scale law of `(L^β)^ρ`: `d = β^{β/(1−β)} − β^{1/(1−β)}`, `θ = 1/(ρ(1−β))`.
///
/// ρ only changes θ: the map `x ↦ x^ρ` turns `d·x^{1/(1−β)}` into
/// `d·x^{1/(ρ(1−β))}`.
pub fn ggbm_scale_law<T: Scalar>(params: &GgbmParams<T>) -> ScaleLaw<T> {
    let one = T::one();
    let b = params.beta;
    let d = b.powf(b / (one - b)) - b.powf(one / (one - b));
    let theta = one / (params.rho * (one - b));
    ScaleLaw { d, theta }
}

/// `sup_{η ≥ 0} { η·x − η^{1/β} }`: the Legendre transform of the limiting
/// log-moment generating function of `L^β`, computed numerically.
pub fn legendre_conjugate<T: Scalar>(beta: T, x: T) -> Result<T> {
    if !(beta > T::zero() && beta < T::one()) {
        return Err(Error::Domain(format!("β must lie in (0, 1), got {beta}")));
    }
    if !(x >= T::zero()) {
        return Err(Error::Domain(format!("x must be ≥ 0, got {x}")));
    }
    if x == T::zero() {
        return Ok(T::zero());
    }
    let inv_beta = T::one() / beta;
    // maximize over η = e^u
    let neg = |u: T| {
        let eta = u.exp();
        eta.powf(inv_beta) - eta * x
    };
    let (lo, hi) = bracket_downhill(neg, T::zero(), T::one(), 200)?;
    let m = golden_section(neg, lo, hi, T::lit(1e-12), 400);
    Ok((-m.value).max(T::zero()))
}
