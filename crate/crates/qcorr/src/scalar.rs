//! Scalar abstraction for the numeric core.
//!
//! Every transform, entropy functional and witness formula in this crate is
//! written against [`Scalar`] rather than a concrete float, so the same code
//! runs in `f32` or `f64`. Tolerances are part of the trait because a sane
//! positivity slack for `f64` (1e-12) is meaningless noise for `f32`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar usable throughout the numeric core.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Slack below zero tolerated in spectra produced by exact transforms.
    /// Entries in `[-positivity_tolerance(), 0)` are clamped to zero.
    fn positivity_tolerance() -> Self;

    /// Slack on unit-sum checks for probability vectors.
    fn unit_sum_tolerance() -> Self;

    /// Slack when two independent computation routes of the same quantity
    /// are compared (entropy compositions accumulate more rounding than
    /// single transforms).
    fn cross_route_tolerance() -> Self;

    /// Lossy conversion from `f64`, for literals inside generic code.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }

    /// Lossy conversion to `f64`, for diagnostics and serialization.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar representable as f64")
    }
}

impl Scalar for f64 {
    fn positivity_tolerance() -> Self {
        1e-12
    }

    fn unit_sum_tolerance() -> Self {
        1e-12
    }

    fn cross_route_tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn positivity_tolerance() -> Self {
        1e-5
    }

    fn unit_sum_tolerance() -> Self {
        1e-5
    }

    fn cross_route_tolerance() -> Self {
        1e-2
    }
}
