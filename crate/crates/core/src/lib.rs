//! Exponential decay rates of exit probabilities for randomly scaled
//! Gaussian processes.
//!
//! The engine covers processes `Z = A·X + b̂` (one shared random scale) and
//! `Z = A∘X + b̂` (independent per-component scales), where `X` has
//! independent fBm components and the scale satisfies a large-deviation
//! principle with rate `d·x^θ`. It provides
//!
//! - rate functions on paths built from kernel sections ([`rates`]),
//! - closed-form decay rates for halfspace and quadrant exits together with
//!   their most likely paths ([`decay`]),
//! - a discretized variational solver used as an independent check
//!   ([`oracle`]),
//! - Monte Carlo estimates of the exit probabilities ([`montecarlo`]).
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix `f64`.

pub mod decay;
pub mod error;
pub mod kernels;
pub mod montecarlo;
pub mod optimize;
pub mod oracle;
pub mod quadrature;
pub mod rates;
pub mod scalar;
pub mod scalelaw;
pub mod shift;

pub use decay::{
    decay, decay_halfspace_equal, decay_halfspace_indep, decay_quadrant_equal, decay_quadrant_indep,
    most_likely_path, DecayResult, ExitEvent, ExitHalfspace, ExitKind, ExitQuadrant, ModelKind, ModelTag,
    MostLikelyPath,
};
pub use error::{Error, Result};
pub use kernels::{factor_psd, gram, JitterPolicy, KernelFamily, KernelSpec, TimeGrid};
pub use optimize::OptimizerConfig;
pub use oracle::{DiscretizedProblem, OracleSolution};
pub use rates::{rate_equal, rate_indep, AtomicComponent, AtomicPath, ExtRate, PerturbationModel};
pub use scalar::Scalar;
pub use scalelaw::{
    ggbm_scale_law, legendre_conjugate, mittag_leffler, mwright_density, scalar_profile, v_const, GgbmParams,
    ScaleLaw,
};
pub use shift::Shift;

pub type KernelSpecF64 = KernelSpec<f64>;
pub type TimeGridF64 = TimeGrid<f64>;
pub type ScaleLawF64 = ScaleLaw<f64>;
pub type GgbmParamsF64 = GgbmParams<f64>;
pub type ShiftF64 = Shift<f64>;
pub type AtomicPathF64 = AtomicPath<f64>;
pub type AtomicComponentF64 = AtomicComponent<f64>;
pub type PerturbationModelF64 = PerturbationModel<f64>;
pub type ExitEventF64 = ExitEvent<f64>;
pub type ExitHalfspaceF64 = ExitHalfspace<f64>;
pub type ExitQuadrantF64 = ExitQuadrant<f64>;
pub type DecayResultF64 = DecayResult<f64>;
pub type DiscretizedProblemF64 = DiscretizedProblem<f64>;
pub type OracleSolutionF64 = OracleSolution<f64>;
