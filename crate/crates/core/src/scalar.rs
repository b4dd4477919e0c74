//! Scalar abstraction for the numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar used by the classifier and ROC machinery.
///
/// Implemented for `f32` and `f64`. Everything downstream of CSV input is
/// generic over this trait; the crate root exports `f64` aliases for the
/// common case.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + Sum
    + Debug
    + Display
    + Copy
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from `f64` literals and tolerances.
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 conversion")
    }

    /// Conversion of counts and indices.
    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize conversion")
    }
}

impl Real for f32 {}
impl Real for f64 {}
