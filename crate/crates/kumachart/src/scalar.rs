//! Scalar abstraction for the distribution and chart mathematics.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar usable for the closed-form mathematics.
///
/// Implemented by `f32` and `f64` through the blanket impl. The estimation
/// and Monte Carlo layers are fixed to `f64` — their convergence tolerances
/// are double-precision contracts — but the distribution functions, special
/// functions, and chart formulas accept any `Real`.
pub trait Real: Float + FromPrimitive + Debug + Display + Copy + Send + Sync + 'static {
    /// Converts an `f64` constant (the fixed literals used internally are
    /// all finite and representable in `f32` and `f64`).
    #[inline]
    fn cst(x: f64) -> Self {
        debug_assert!(x.is_finite(), "internal constants are finite");
        Self::from_f64(x).expect("finite constant must be representable")
    }

    /// `1/2`, the most common constant in the equal-tail formulas.
    #[inline]
    fn half() -> Self {
        Self::cst(0.5)
    }
}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + Copy + Send + Sync + 'static {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cst_round_trips_for_both_widths() {
        assert_eq!(f64::cst(0.25), 0.25_f64);
        assert_eq!(f32::cst(0.25), 0.25_f32);
        assert_eq!(f64::half(), 0.5);
    }
}
