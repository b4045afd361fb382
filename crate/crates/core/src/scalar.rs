//! Scalar abstraction shared by the game model and the LP backend.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// A floating-point number usable throughout the solver: `f32` or `f64`.
///
/// Tolerances scale with the precision of the type. The `f64` values are the
/// contract values; the `f32` ones are loosened to what single precision can
/// actually resolve.
pub trait Scalar:
    Float
    + FromPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    const NAME: &'static str;

    /// Absolute tolerance for probability normalization and utility equality.
    fn prob_tol() -> Self;
    /// Primal feasibility tolerance of the simplex backend.
    fn feasibility_tol() -> Self;
    /// Reduced-cost tolerance of the simplex backend.
    fn optimality_tol() -> Self;
    /// Smallest magnitude accepted as a pivot element.
    fn pivot_tol() -> Self;

    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }
}

impl Scalar for f64 {
    const NAME: &'static str = "f64";

    fn prob_tol() -> Self {
        1e-9
    }
    fn feasibility_tol() -> Self {
        1e-8
    }
    fn optimality_tol() -> Self {
        1e-9
    }
    fn pivot_tol() -> Self {
        1e-11
    }
}

impl Scalar for f32 {
    const NAME: &'static str = "f32";

    fn prob_tol() -> Self {
        1e-5
    }
    fn feasibility_tol() -> Self {
        1e-4
    }
    fn optimality_tol() -> Self {
        1e-5
    }
    fn pivot_tol() -> Self {
        1e-6
    }
}
