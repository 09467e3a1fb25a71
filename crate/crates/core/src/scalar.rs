//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar the solver is generic over (`f32` or `f64`).
///
/// Tolerances are tied to the scalar: the `f64` values are the documented
/// library constants, the `f32` values are scaled to what single precision
/// can resolve.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Normalization tolerance for mass functions and the degeneracy
    /// threshold for belief intervals.
    const NORMALIZATION_TOL: Self;
    /// Default tie tolerance for the strict ESS inequalities.
    const ESS_TOL: Self;

    /// Lossy conversion from `f64`; every literal in the crate goes through this.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Scalar")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar converts to f64")
    }

    fn half() -> Self {
        Self::of(0.5)
    }
}

impl Scalar for f64 {
    const NORMALIZATION_TOL: f64 = 1e-12;
    const ESS_TOL: f64 = 1e-9;
}

impl Scalar for f32 {
    const NORMALIZATION_TOL: f32 = 1e-6;
    const ESS_TOL: f32 = 1e-5;
}
