//! Scalar abstraction shared by every module.
//!
//! All of the math is written against [`Real`], so the same code runs in
//! `f32`, `f64`, or an extended-precision type such as a double-double.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Floating point scalar: `f32`, `f64` or any extended type with the same
/// `num-traits` surface.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`.
///
/// Goes through `NumCast`: some double-double types truncate fractional
/// inputs in `FromPrimitive::from_f64`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    <T as NumCast>::from(x).expect("literal representable in scalar type")
}

/// Relative rounding unit of `T`.
///
/// `T::epsilon()` for `f32` and `f64`. Double-double types can represent
/// `1 + x` for any tiny `x` and may report a subnormal epsilon, so the
/// result is floored at `f64::EPSILON²/4`, their true working precision.
#[inline]
pub fn precision<T: Real>() -> T {
    T::epsilon().max(lit(f64::EPSILON * f64::EPSILON / 4.0))
}

/// Converts a count into `T`.
#[inline]
pub fn count<T: Real>(n: u64) -> T {
    T::from_u64(n).expect("count representable in scalar type")
}

/// Rescales a tolerance stated for `f64` to the precision of `T`.
///
/// `tol::<f64>(1e-12)` is exactly `1e-12`; for `f32` the bound grows by the
/// ratio of machine epsilons.
#[inline]
pub fn tol<T: Real>(f64_tol: f64) -> T {
    lit::<T>(f64_tol) * (precision::<T>() / lit::<T>(f64::EPSILON))
}
