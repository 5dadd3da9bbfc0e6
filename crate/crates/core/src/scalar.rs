//! Floating-point scalar abstraction shared by every numeric routine.

use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar the clustering code is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + LowerExp + FromStr + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant. Every `f64` is representable (possibly rounded) in both impls.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal fits the scalar type")
    }

    /// Widens to `f64` losslessly.
    #[inline]
    fn to_f64_lossless(self) -> f64 {
        self.to_f64().expect("scalar widens to f64")
    }

    /// A tolerance of `base`, floored at a small multiple of machine epsilon.
    ///
    /// For `f64` the floor (about 2.2e-14) sits below every tolerance used in
    /// the crate, so `f64` callers get `base` unchanged; `f32` callers get a
    /// band wide enough for single-precision round-off.
    #[inline]
    fn tolerance(base: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(100.0);
        Self::lit(base).max(floor)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_tolerance_is_untouched() {
        assert_eq!(f64::tolerance(1e-12), 1e-12);
        assert_eq!(f64::tolerance(1e-8), 1e-8);
    }

    #[test]
    fn f32_tolerance_is_floored() {
        assert!(f32::tolerance(1e-12) > 1e-6);
        assert_eq!(f32::tolerance(0.5), 0.5);
    }
}
