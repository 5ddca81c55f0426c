//! Scalar abstraction. All numeric code in this crate is generic over [`Real`],
//! a blanket trait over floating-point types from `num-traits`. The crate root
//! exports `f64` aliases for the common case.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating-point scalar usable throughout the crate (`f32`, `f64`, ...).
pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumAssignOps + Sum + Debug + Display + Send + Sync + 'static
{
    /// Converts from `f64`, panicking only for exotic scalar types that cannot
    /// represent ordinary constants.
    #[inline]
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("scalar type must represent f64 constants")
    }

    /// Lossy view as `f64`, for reporting and logging.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar type must convert to f64")
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + NumAssignOps
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}
