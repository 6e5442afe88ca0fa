//! Floating-point abstraction shared by the numeric kernels.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point type accepted by the geometric kernels (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in target float")
}

/// Lossy conversion to `f64`, used for error payloads and reports.
#[inline]
pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Step for central differences of order `order` at abscissa `t`.
///
/// Balances truncation against round-off: `eps^(1/(order+2))` scaled by `max(1, |t|)`.
pub fn fd_step<T: Real>(order: u32, t: T) -> T {
    let p = T::one() / T::from_u32(order + 2).unwrap();
    T::epsilon().powf(p) * T::one().max(t.abs())
}
