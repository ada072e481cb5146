//! Closed-form exponential decay rates of halfspace and quadrant exit
//! probabilities, their minimizing exit times, and the most likely exit
//! paths.
//!
//! Every rate has the form `inf_t F(g(t))` with `F` increasing, so the time
//! search runs on the inner ratio `g` and the outer power is applied once.

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::optimize::{minimize_on_horizon, OptimizerConfig};
use crate::rates::{self, AtomicComponent, AtomicPath, PerturbationModel};
use crate::scalar::Scalar;
use crate::scalelaw::{v_const, ScaleLaw};
use crate::shift::Shift;

fn check_horizon<T: Scalar>(horizon: T) -> Result<()> {
    if !(horizon > T::zero()) || !horizon.is_finite() {
        return Err(Error::config("horizon", format!("must be positive, got {horizon}")));
    }
    Ok(())
}

/// Exit through the halfspace `{⟨z(t), ξ⟩ ≥ x}` at some `t ∈ [0, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExitHalfspace<T> {
    xi: Vec<T>,
    x: T,
    shift: Shift<T>,
    horizon: T,
}

impl<T: Scalar> ExitHalfspace<T> {
    /// Requires `ξ ≥ 0`, `ξ ≠ 0`, `x > 0` and a strictly positive margin
    /// `x − ⟨b̂(t), ξ⟩` on all of `[0, T]`.
    pub fn new(xi: Vec<T>, x: T, shift: Shift<T>, horizon: T) -> Result<Self> {
        check_horizon(horizon)?;
        if xi.is_empty() {
            return Err(Error::config("xi", "needs at least one component"));
        }
        if xi.iter().any(|&v| !(v >= T::zero()) || !v.is_finite()) {
            return Err(Error::config("xi", "components must be finite and non-negative"));
        }
        if xi.iter().all(|&v| v == T::zero()) {
            return Err(Error::config("xi", "must not be the zero vector"));
        }
        if !(x > T::zero()) || !x.is_finite() {
            return Err(Error::config("x", format!("level must be positive, got {x}")));
        }
        shift.validate()?;
        if shift.dim() != xi.len() {
            return Err(Error::config(
                "shift",
                format!("has {} components, ξ has {}", shift.dim(), xi.len()),
            ));
        }
        let exit = ExitHalfspace { xi, x, shift, horizon };
        // the margin is piecewise linear in t, so its minimum sits at a breakpoint
        for t in exit.shift.breakpoints(horizon) {
            let m = exit.margin(t);
            if !(m > T::zero()) {
                return Err(Error::Domain(format!(
                    "level {x} is not above ⟨b̂(t), ξ⟩ at t = {t} (margin {m})"
                )));
            }
        }
        Ok(exit)
    }

    pub fn dim(&self) -> usize {
        self.xi.len()
    }

    pub fn xi(&self) -> &[T] {
        &self.xi
    }

    pub fn level(&self) -> T {
        self.x
    }

    pub fn shift(&self) -> &Shift<T> {
        &self.shift
    }

    pub fn horizon(&self) -> T {
        self.horizon
    }

    /// `x − ⟨b̂(t), ξ⟩`.
    pub fn margin(&self, t: T) -> T {
        let inner = self
            .xi
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, &xi)| acc + xi * self.shift.component(i, t));
        self.x - inner
    }
}

/// Exit through the quadrant `⋂_i {sup_t z_i(t) ≥ x_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExitQuadrant<T> {
    levels: Vec<T>,
    shift: Shift<T>,
    horizon: T,
}

impl<T: Scalar> ExitQuadrant<T> {
    /// Requires `x_i > 0` and `x_i − b̂_i(t) > 0` on `[0, T]` for every `i`.
    pub fn new(levels: Vec<T>, shift: Shift<T>, horizon: T) -> Result<Self> {
        check_horizon(horizon)?;
        if levels.is_empty() {
            return Err(Error::config("levels", "needs at least one component"));
        }
        if levels.iter().any(|&v| !(v > T::zero()) || !v.is_finite()) {
            return Err(Error::config("levels", "every level must be positive"));
        }
        shift.validate()?;
        if shift.dim() != levels.len() {
            return Err(Error::config(
                "shift",
                format!("has {} components, {} levels given", shift.dim(), levels.len()),
            ));
        }
        let exit = ExitQuadrant { levels, shift, horizon };
        for t in exit.shift.breakpoints(horizon) {
            for i in 0..exit.dim() {
                let m = exit.margin(i, t);
                if !(m > T::zero()) {
                    return Err(Error::Domain(format!(
                        "level x_{i} = {} is not above b̂_{i}(t) at t = {t} (margin {m})",
                        exit.levels[i]
                    )));
                }
            }
        }
        Ok(exit)
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[T] {
        &self.levels
    }

    pub fn shift(&self) -> &Shift<T> {
        &self.shift
    }

    pub fn horizon(&self) -> T {
        self.horizon
    }

    /// `x_i − b̂_i(t)`.
    pub fn margin(&self, i: usize, t: T) -> T {
        self.levels[i] - self.shift.component(i, t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExitEvent<T> {
    Halfspace(ExitHalfspace<T>),
    Quadrant(ExitQuadrant<T>),
}

impl<T: Scalar> ExitEvent<T> {
    pub fn dim(&self) -> usize {
        match self {
            ExitEvent::Halfspace(e) => e.dim(),
            ExitEvent::Quadrant(e) => e.dim(),
        }
    }

    pub fn shift(&self) -> &Shift<T> {
        match self {
            ExitEvent::Halfspace(e) => e.shift(),
            ExitEvent::Quadrant(e) => e.shift(),
        }
    }

    pub fn horizon(&self) -> T {
        match self {
            ExitEvent::Halfspace(e) => e.horizon(),
            ExitEvent::Quadrant(e) => e.horizon(),
        }
    }

    pub fn kind(&self) -> ExitKind {
        match self {
            ExitEvent::Halfspace(_) => ExitKind::Halfspace,
            ExitEvent::Quadrant(_) => ExitKind::Quadrant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExitKind {
    Halfspace,
    Quadrant,
}

/// Shared scale `(=)` or independent per-component scales `(⊥)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Equal,
    Indep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelTag {
    pub exit: ExitKind,
    pub model: ModelKind,
}

/// Decay rate `w` with its minimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayResult<T> {
    pub w: T,
    /// One time for a halfspace, one per component for a quadrant.
    pub t_star: Vec<T>,
    /// Weight of the single atom of each component of the optimal measure.
    pub c_star: Vec<T>,
    pub tag: ModelTag,
}

fn check_kernels<T: Scalar>(kernels: &[KernelSpec<T>], p: usize) -> Result<()> {
    if kernels.len() != p {
        return Err(Error::Usage(format!(
            "{} kernels for a {p}-component exit",
            kernels.len()
        )));
    }
    Ok(())
}

fn check_theta_above_two<T: Scalar>(law: &ScaleLaw<T>) -> Result<()> {
    if !(law.theta() > T::lit(2.0)) {
        return Err(Error::Precondition(format!(
            "the independent-scale model needs θ > 2, got {}",
            law.theta()
        )));
    }
    Ok(())
}

/// `v(d,θ)·(½ g)^{θ/(θ+2)}`.
fn outer<T: Scalar>(law: &ScaleLaw<T>, g: T) -> T {
    if g == T::zero() {
        return T::zero();
    }
    v_const(law) * (T::lit(0.5) * g).powf(law.norm_exponent())
}

/// `inf_t (x_i − b̂_i(t))² / k_ii(t,t)` over `(0, T]`.
fn quadrant_component<T: Scalar>(
    exit: &ExitQuadrant<T>,
    i: usize,
    kernel: &KernelSpec<T>,
    opt: &OptimizerConfig,
) -> (T, T) {
    let g = |t: T| {
        let m = exit.margin(i, t);
        m * m / kernel.variance(t)
    };
    let best = minimize_on_horizon(g, exit.horizon(), opt);
    (best.x, best.value)
}

/// Decay rate of the halfspace exit under a shared scale:
/// `inf_t v(d,θ)[½(x − ⟨b̂(t),ξ⟩)² / Σ_j ξ_j² k_jj(t,t)]^{θ/(θ+2)}`.
pub fn decay_halfspace_equal<T: Scalar>(
    exit: &ExitHalfspace<T>,
    kernels: &[KernelSpec<T>],
    law: &ScaleLaw<T>,
    opt: &OptimizerConfig,
) -> Result<DecayResult<T>> {
    opt.validate()?;
    check_kernels(kernels, exit.dim())?;
    let denom = |t: T| {
        exit.xi
            .iter()
            .zip(kernels)
            .fold(T::zero(), |acc, (&xi, k)| acc + xi * xi * k.variance(t))
    };
    let g = |t: T| {
        let r = exit.margin(t);
        r * r / denom(t)
    };
    let best = minimize_on_horizon(g, exit.horizon(), opt);
    let t = best.x;
    let r = exit.margin(t);
    let den = denom(t);
    let c_star = exit.xi.iter().map(|&xi| xi * r / den).collect();
    Ok(DecayResult {
        w: outer(law, best.value),
        t_star: vec![t],
        c_star,
        tag: ModelTag {
            exit: ExitKind::Halfspace,
            model: ModelKind::Equal,
        },
    })
}

/// Decay rate of the halfspace exit under independent scales with common
/// `(d, θ)`, `θ > 2`: the denominator becomes
/// `(Σ_j ξ_j^{2θ/(θ−2)} k_jj(t,t)^{θ/(θ−2)})^{(θ−2)/θ}`.
pub fn decay_halfspace_indep<T: Scalar>(
    exit: &ExitHalfspace<T>,
    kernels: &[KernelSpec<T>],
    law: &ScaleLaw<T>,
    opt: &OptimizerConfig,
) -> Result<DecayResult<T>> {
    check_theta_above_two(law)?;
    opt.validate()?;
    check_kernels(kernels, exit.dim())?;
    let two = T::lit(2.0);
    let th = law.theta();
    let q = th / (th - two);
    let power_sum = |t: T| {
        exit.xi.iter().zip(kernels).fold(T::zero(), |acc, (&xi, k)| {
            if xi == T::zero() {
                acc
            } else {
                acc + xi.powf(two * q) * k.variance(t).powf(q)
            }
        })
    };
    let g = |t: T| {
        let r = exit.margin(t);
        r * r / power_sum(t).powf(T::one() / q)
    };
    let best = minimize_on_horizon(g, exit.horizon(), opt);
    let t = best.x;
    let r = exit.margin(t);
    let s = power_sum(t);
    let c_star = exit
        .xi
        .iter()
        .zip(kernels)
        .map(|(&xi, k)| {
            if xi == T::zero() {
                T::zero()
            } else {
                r * xi.powf((th + two) / (th - two)) * k.variance(t).powf(two / (th - two)) / s
            }
        })
        .collect();
    Ok(DecayResult {
        w: outer(law, best.value),
        t_star: vec![t],
        c_star,
        tag: ModelTag {
            exit: ExitKind::Halfspace,
            model: ModelKind::Indep,
        },
    })
}

/// Decay rate of the quadrant exit under a shared scale:
/// `v(d,θ)[½ Σ_i inf_{t_i} (x_i − b̂_i(t_i))²/k_ii(t_i,t_i)]^{θ/(θ+2)}`.
pub fn decay_quadrant_equal<T: Scalar>(
    exit: &ExitQuadrant<T>,
    kernels: &[KernelSpec<T>],
    law: &ScaleLaw<T>,
    opt: &OptimizerConfig,
) -> Result<DecayResult<T>> {
    opt.validate()?;
    check_kernels(kernels, exit.dim())?;
    let mut total = T::zero();
    let mut t_star = Vec::with_capacity(exit.dim());
    let mut c_star = Vec::with_capacity(exit.dim());
    for (i, k) in kernels.iter().enumerate() {
        let (t, g) = quadrant_component(exit, i, k, opt);
        total += g;
        t_star.push(t);
        c_star.push(exit.margin(i, t) / k.variance(t));
    }
    Ok(DecayResult {
        w: outer(law, total),
        t_star,
        c_star,
        tag: ModelTag {
            exit: ExitKind::Quadrant,
            model: ModelKind::Equal,
        },
    })
}

/// Decay rate of the quadrant exit under independent scales:
/// `Σ_i inf_{t_i} v(d_i,θ_i)[½(x_i − b̂_i(t_i))²/k_ii(t_i,t_i)]^{θ_i/(θ_i+2)}`.
pub fn decay_quadrant_indep<T: Scalar>(
    exit: &ExitQuadrant<T>,
    kernels: &[KernelSpec<T>],
    laws: &[ScaleLaw<T>],
    opt: &OptimizerConfig,
) -> Result<DecayResult<T>> {
    if laws.len() != exit.dim() {
        return Err(Error::Usage(format!(
            "{} scale laws for a {}-component exit",
            laws.len(),
            exit.dim()
        )));
    }
    for law in laws {
        check_theta_above_two(law)?;
    }
    opt.validate()?;
    check_kernels(kernels, exit.dim())?;
    let mut w = T::zero();
    let mut t_star = Vec::with_capacity(exit.dim());
    let mut c_star = Vec::with_capacity(exit.dim());
    for (i, (k, law)) in kernels.iter().zip(laws).enumerate() {
        let (t, g) = quadrant_component(exit, i, k, opt);
        w += outer(law, g);
        t_star.push(t);
        c_star.push(exit.margin(i, t) / k.variance(t));
    }
    Ok(DecayResult {
        w,
        t_star,
        c_star,
        tag: ModelTag {
            exit: ExitKind::Quadrant,
            model: ModelKind::Indep,
        },
    })
}

/// Dispatches to the matching closed form. The independent-scale halfspace
/// rate needs all laws equal.
pub fn decay<T: Scalar>(
    exit: &ExitEvent<T>,
    kernels: &[KernelSpec<T>],
    model: &PerturbationModel<T>,
    opt: &OptimizerConfig,
) -> Result<DecayResult<T>> {
    model.validate(exit.dim())?;
    match (exit, model) {
        (ExitEvent::Halfspace(e), PerturbationModel::Shared(law)) => {
            decay_halfspace_equal(e, kernels, law, opt)
        }
        (ExitEvent::Halfspace(e), PerturbationModel::Hadamard(laws)) => {
            let first = laws[0];
            if laws.iter().any(|l| *l != first) {
                return Err(Error::Precondition(
                    "the independent-scale halfspace rate needs identical (d, θ) per component"
                        .into(),
                ));
            }
            decay_halfspace_indep(e, kernels, &first, opt)
        }
        (ExitEvent::Quadrant(e), PerturbationModel::Shared(law)) => {
            decay_quadrant_equal(e, kernels, law, opt)
        }
        (ExitEvent::Quadrant(e), PerturbationModel::Hadamard(laws)) => {
            decay_quadrant_indep(e, kernels, laws, opt)
        }
    }
}

/// Most likely exit path together with its values on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MostLikelyPath<T> {
    pub path: AtomicPath<T>,
    pub times: Vec<T>,
    /// `values[k][i] = z*_i(times[k])`.
    pub values: Vec<Vec<T>>,
}

/// Path with one atom `(t*_i, c*_i)` per component:
/// `z*_i(u) = c*_i k_ii(u, t*_i) + b̂_i(u)`.
pub fn most_likely_path<T: Scalar>(
    result: &DecayResult<T>,
    exit: &ExitEvent<T>,
    kernels: &[KernelSpec<T>],
    times: &[T],
) -> Result<MostLikelyPath<T>> {
    let p = exit.dim();
    if result.tag.exit != exit.kind() {
        return Err(Error::Usage(format!(
            "result is for a {:?} exit, got a {:?} exit",
            result.tag.exit,
            exit.kind()
        )));
    }
    check_kernels(kernels, p)?;
    let want_times = match exit.kind() {
        ExitKind::Halfspace => 1,
        ExitKind::Quadrant => p,
    };
    if result.c_star.len() != p || result.t_star.len() != want_times {
        return Err(Error::Usage(format!(
            "result carries {} weights and {} times for a {p}-component exit",
            result.c_star.len(),
            result.t_star.len()
        )));
    }
    let horizon = exit.horizon();
    let components = (0..p)
        .map(|i| {
            let t = result.t_star[if want_times == 1 { 0 } else { i }];
            if !(t > T::zero() && t <= horizon) {
                return Err(Error::Usage(format!("exit time {t} outside (0, {horizon}]")));
            }
            AtomicComponent::single(t, result.c_star[i], horizon)
        })
        .collect::<Result<Vec<_>>>()?;
    let path = AtomicPath::new(components, kernels.to_vec(), exit.shift().clone())?;
    let values = times.iter().map(|&u| rates::eval_path(&path, u)).collect();
    Ok(MostLikelyPath {
        path,
        times: times.to_vec(),
        values,
    })
}
