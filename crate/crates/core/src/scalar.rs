//! Floating-point abstraction shared by every numerical module.

use nalgebra::RealField;
use num_traits::{FloatConst, ToPrimitive};

/// Real scalar the engine computes in: `f32` or `f64`.
///
/// Arithmetic and elementary functions come from [`RealField`]; the few
/// special functions nalgebra does not provide are added here.
pub trait Scalar: RealField + Copy + FloatConst + ToPrimitive {
    /// Converts an `f64` literal or constant into this scalar type.
    fn lit(v: f64) -> Self;

    /// Natural logarithm of the Gamma function for positive arguments.
    fn log_gamma(self) -> Self;

    /// Machine epsilon.
    fn epsilon() -> Self;

    fn infinity() -> Self;

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn lit(v: f64) -> Self {
                v as $t
            }

            fn log_gamma(self) -> Self {
                statrs::function::gamma::ln_gamma(self as f64) as $t
            }

            #[inline]
            fn epsilon() -> Self {
                <$t>::EPSILON
            }

            #[inline]
            fn infinity() -> Self {
                <$t>::INFINITY
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);
