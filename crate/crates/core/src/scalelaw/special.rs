//! Mittag-Leffler function and M-Wright density on the real line.
//!
//! Both are evaluated from their power series with compensated summation.
//! The M-Wright density additionally has a positive integral representation
//! (through Kanter's function) used where the alternating series cancels
//! catastrophically.

use crate::error::{Error, Result};
use crate::quadrature;
use crate::scalar::Scalar;

/// Largest |argument| accepted by the series evaluators.
pub const MAX_SERIES_ARG: f64 = 50.0;
/// Series stop once the term envelope drops below this fraction of the sum.
pub const SERIES_REL_TOL: f64 = 1e-15;
pub const MAX_SERIES_TERMS: usize = 10_000;
/// Largest admissible ratio between the biggest term and the result; keeps
/// roughly ten significant digits in `f64`.
pub const CANCELLATION_LIMIT: f64 = 1e6;

/// Neumaier compensated sum.
#[derive(Debug, Clone, Copy)]
struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Scalar> CompensatedSum<T> {
    fn new() -> Self {
        CompensatedSum {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    fn add(&mut self, v: T) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> T {
        self.sum + self.carry
    }
}

/// `sin(πx)` with exact argument reduction to `[-½, ½]`.
fn sin_pi<T: Scalar>(x: T) -> T {
    let n = x.round();
    let f = x - n;
    let s = (T::pi() * f).sin();
    let odd = (n * T::lit(0.5)).fract() != T::zero();
    if odd {
        -s
    } else {
        s
    }
}

/// `1/Γ(x)`, with the value 0 at the non-positive integers.
pub fn rgamma<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        return (-x.log_gamma()).exp();
    }
    if x == x.round() {
        return T::zero();
    }
    sin_pi(x) * (T::one() - x).log_gamma().exp() / T::pi()
}

/// Mittag-Leffler function `E_β(z) = Σ_h z^h / Γ(βh + 1)` for real `z`.
pub fn mittag_leffler<T: Scalar>(beta: T, z: T) -> Result<T> {
    if !(beta > T::zero() && beta <= T::one()) {
        return Err(Error::Domain(format!(
            "Mittag-Leffler index must lie in (0, 1], got {beta}"
        )));
    }
    if !z.is_finite() || z.abs() > T::lit(MAX_SERIES_ARG) {
        return Err(Error::Domain(format!(
            "|z| must not exceed {MAX_SERIES_ARG}, got {z}"
        )));
    }
    if z == T::zero() {
        return Ok(T::one());
    }
    let ln_abs_z = z.abs().ln();
    let negative = z < T::zero();
    let mut acc = CompensatedSum::new();
    acc.add(T::one());
    let mut biggest = T::one();
    let mut prev = T::one();
    for h in 1..MAX_SERIES_TERMS {
        let hf = T::lit(h as f64);
        let mag = (hf * ln_abs_z - (beta * hf + T::one()).log_gamma()).exp();
        if !mag.is_finite() {
            return Err(Error::Numerical(format!(
                "Mittag-Leffler series overflows at term {h} for z = {z}"
            )));
        }
        let term = if negative && h % 2 == 1 { -mag } else { mag };
        acc.add(term);
        biggest = biggest.max(mag);
        let s = acc.value();
        if mag < prev && mag <= T::lit(SERIES_REL_TOL) * s.abs() {
            return check_cancellation(s, biggest, "Mittag-Leffler");
        }
        prev = mag;
    }
    Err(Error::Numerical(format!(
        "Mittag-Leffler series did not converge within {MAX_SERIES_TERMS} terms for z = {z}"
    )))
}

fn check_cancellation<T: Scalar>(s: T, biggest: T, what: &str) -> Result<T> {
    if !s.is_finite() || biggest > T::lit(CANCELLATION_LIMIT) * s.abs() {
        return Err(Error::Numerical(format!(
            "{what} series lost all accuracy: largest term {biggest} against result {s}"
        )));
    }
    Ok(s)
}

fn check_mwright_args<T: Scalar>(beta: T, tau: T) -> Result<()> {
    if !(beta > T::zero() && beta < T::one()) {
        return Err(Error::Domain(format!(
            "M-Wright index must lie in (0, 1), got {beta}"
        )));
    }
    if !(tau >= T::zero()) || !tau.is_finite() {
        return Err(Error::Domain(format!("τ must be non-negative, got {tau}")));
    }
    Ok(())
}

/// M-Wright density `M_β(τ) = Σ_k (−τ)^k / (k! Γ(1 − β − βk))` from its
/// alternating series.
///
/// Fails with a numerical error when the largest term exceeds the result by
/// more than [`CANCELLATION_LIMIT`].
pub fn mwright_density_series<T: Scalar>(beta: T, tau: T) -> Result<T> {
    check_mwright_args(beta, tau)?;
    if tau > T::lit(MAX_SERIES_ARG) {
        return Err(Error::Domain(format!(
            "τ must not exceed {MAX_SERIES_ARG}, got {tau}"
        )));
    }
    if tau == T::zero() {
        return Ok(rgamma(T::one() - beta));
    }
    // 1/Γ(1−β(k+1)) = sin(π(1−β(k+1))) Γ(β(k+1)) / π, with an envelope that
    // drops the sine factor.
    let ln_tau = tau.ln();
    let mut acc = CompensatedSum::new();
    let mut biggest = T::zero();
    let mut prev_env = T::zero();
    for k in 0..MAX_SERIES_TERMS {
        let kf = T::lit(k as f64);
        let x = T::one() - beta * (kf + T::one());
        let ln_env = kf * ln_tau - (kf + T::one()).log_gamma() + (beta * (kf + T::one())).log_gamma()
            - T::pi().ln();
        let env = ln_env.exp();
        if !env.is_finite() {
            return Err(Error::Numerical(format!(
                "M-Wright series overflows at term {k} for τ = {tau}"
            )));
        }
        let term = if x == x.round() {
            T::zero()
        } else {
            let t = env * sin_pi(x);
            if k % 2 == 1 {
                -t
            } else {
                t
            }
        };
        acc.add(term);
        biggest = biggest.max(term.abs());
        let s = acc.value();
        if k > 0 && env < prev_env && env <= T::lit(SERIES_REL_TOL) * s.abs() {
            return check_cancellation(s, biggest, "M-Wright");
        }
        prev_env = env;
    }
    Err(Error::Numerical(format!(
        "M-Wright series did not converge within {MAX_SERIES_TERMS} terms for τ = {tau}"
    )))
}

/// Kanter's function `A(φ) = (sin βφ / sin φ)^{1/(1−β)} · sin((1−β)φ) / sin βφ`
/// on `[0, π]`.
pub fn kanter_function<T: Scalar>(beta: T, phi: T) -> T {
    let one = T::one();
    if phi == T::zero() {
        return (one - beta) * beta.powf(beta / (one - beta));
    }
    let sb = (beta * phi).sin();
    (sb / phi.sin()).powf(one / (one - beta)) * ((one - beta) * phi).sin() / sb
}

/// M-Wright density from the integral representation
/// `M_β(τ) = τ^{β/(1−β)} / ((1−β)π) ∫_0^π A(φ) exp(−A(φ) τ^{1/(1−β)}) dφ`,
/// which has a positive integrand. Requires `τ > 0`.
pub fn mwright_density_integral<T: Scalar>(beta: T, tau: T) -> Result<T> {
    check_mwright_args(beta, tau)?;
    if tau == T::zero() {
        return Err(Error::Domain(
            "integral representation needs τ > 0".into(),
        ));
    }
    let one = T::one();
    let c = tau.powf(one / (one - beta));
    let integrand = |phi: T| {
        let a = kanter_function(beta, phi);
        if !a.is_finite() {
            return T::zero();
        }
        let v = a * (-a * c).exp();
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };
    // coarse pass sets the scale for the absolute tolerance
    let n = 64;
    let h = T::pi() / T::lit(n as f64);
    let mut rough = T::zero();
    for i in 0..n {
        let a = h * T::lit(i as f64);
        let m = a + h * T::lit(0.5);
        rough += h / T::lit(6.0) * (integrand(a) + T::lit(4.0) * integrand(m) + integrand(a + h));
    }
    let tol = (rough.abs() * T::lit(1e-12)).max(T::lit(1e-300));
    let integral = quadrature::integrate(integrand, T::zero(), T::pi(), tol)?;
    Ok(tau.powf(beta / (one - beta)) / ((one - beta) * T::pi()) * integral)
}

/// M-Wright density `M_β(τ)`.
///
/// Uses the alternating series; when it cancels catastrophically the
/// integral representation takes over.
pub fn mwright_density<T: Scalar>(beta: T, tau: T) -> Result<T> {
    match mwright_density_series(beta, tau) {
        Ok(v) => Ok(v),
        Err(Error::Numerical(_)) if tau > T::zero() => mwright_density_integral(beta, tau),
        Err(e) => Err(e),
    }
}

/// `E[L^h] = Γ(h + 1) / Γ(βh + 1)` for `L` with density `M_β`.
pub fn mwright_moment<T: Scalar>(beta: T, h: T) -> T {
    ((h + T::one()).log_gamma() - (beta * h + T::one()).log_gamma()).exp()
}
