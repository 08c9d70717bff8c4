//! Kumaraswamy distribution on the open unit interval.
//!
//! For shape parameters θ₁, θ₂ > 0 and y ∈ (0,1):
//!
//! * pdf      f(y) = θ₁ θ₂ y^{θ₁−1} (1 − y^{θ₁})^{θ₂−1}
//! * cdf      F(y) = 1 − (1 − y^{θ₁})^{θ₂}
//! * quantile F⁻¹(u) = [1 − (1−u)^{1/θ₂}]^{1/θ₁}
//! * mean     θ₂ B(1 + 1/θ₁, θ₂),  variance  θ₂ B(1 + 2/θ₁, θ₂) − mean²
//!
//! Everything is evaluated through `ln_1p`/`exp_m1` so that the formulas
//! survive extreme second shapes (θ₂ ≈ 10⁴ arises in practice when the
//! monitored proportions are tiny); the moments go through [`special::ln_beta`]
//! for the same reason. The support is the *open* interval: evaluating at 0
//! or 1 is a domain error, not a limit value.

use rand::distr::Open01;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::scalar::Real;
use crate::special;

/// Errors for parameter construction and domain checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    /// Shape parameters must be strictly positive (and finite).
    #[error("shape parameters must be positive and finite, got ({theta1}, {theta2})")]
    InvalidShape { theta1: f64, theta2: f64 },
    /// Observation arguments must lie strictly inside (0,1).
    #[error("observation {0} outside the open support (0,1)")]
    ObservationOutOfRange(f64),
    /// Probability arguments must lie strictly inside (0,1).
    #[error("probability {0} outside the open interval (0,1)")]
    ProbabilityOutOfRange(f64),
}

fn as_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

// ======================================================================
// Parameters
// ======================================================================

/// Shape parameters (θ₁, θ₂) of a Kumaraswamy distribution.
///
/// Construction validates positivity; the accessors therefore never expose
/// an invalid state. The struct doubles as the distribution object itself —
/// all distribution functions are methods on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KumaParams<T = f64> {
    theta1: T,
    theta2: T,
}

impl<T: Real> KumaParams<T> {
    /// Validates θ₁ > 0, θ₂ > 0 (finite) and builds the parameter pair.
    pub fn new(theta1: T, theta2: T) -> Result<Self, DistError> {
        let ok = |v: T| v > T::zero() && v.is_finite();
        if !ok(theta1) || !ok(theta2) {
            return Err(DistError::InvalidShape {
                theta1: as_f64(theta1),
                theta2: as_f64(theta2),
            });
        }
        Ok(Self { theta1, theta2 })
    }

    /// First shape parameter θ₁.
    pub fn theta1(&self) -> T {
        self.theta1
    }

    /// Second shape parameter θ₂.
    pub fn theta2(&self) -> T {
        self.theta2
    }

    fn check_y(&self, y: T) -> Result<(), DistError> {
        if y > T::zero() && y < T::one() {
            Ok(())
        } else {
            Err(DistError::ObservationOutOfRange(as_f64(y)))
        }
    }

    fn check_u(&self, u: T) -> Result<(), DistError> {
        if u > T::zero() && u < T::one() {
            Ok(())
        } else {
            Err(DistError::ProbabilityOutOfRange(as_f64(u)))
        }
    }

    // ------------------------------------------------------------------
    // Density and distribution function
    // ------------------------------------------------------------------

    /// Log-density ln f(y) = ln θ₁ + ln θ₂ + (θ₁−1) ln y + (θ₂−1) ln(1−y^{θ₁}).
    pub fn ln_pdf(&self, y: T) -> Result<T, DistError> {
        self.check_y(y)?;
        let ln_y = y.ln();
        let y_t1 = y.powf(self.theta1);
        Ok(self.theta1.ln()
            + self.theta2.ln()
            + (self.theta1 - T::one()) * ln_y
            + (self.theta2 - T::one()) * (-y_t1).ln_1p())
    }

    /// Density f(y) for y ∈ (0,1).
    pub fn pdf(&self, y: T) -> Result<T, DistError> {
        Ok(self.ln_pdf(y)?.exp())
    }

    /// Distribution function F(y) = 1 − (1 − y^{θ₁})^{θ₂}.
    pub fn cdf(&self, y: T) -> Result<T, DistError> {
        self.check_y(y)?;
        let y_t1 = y.powf(self.theta1);
        Ok(-(self.theta2 * (-y_t1).ln_1p()).exp_m1())
    }

    /// Survival function 1 − F(y) = (1 − y^{θ₁})^{θ₂}, computed directly so
    /// that small upper-tail probabilities keep full relative accuracy.
    pub fn sf(&self, y: T) -> Result<T, DistError> {
        self.check_y(y)?;
        let y_t1 = y.powf(self.theta1);
        Ok((self.theta2 * (-y_t1).ln_1p()).exp())
    }

    // ------------------------------------------------------------------
    // Quantiles
    // ------------------------------------------------------------------

    /// Clamps a mathematically interior value into the representable open
    /// interval: extreme shape/probability combinations can make the exact
    /// quantile closer to 0 or 1 than the float format resolves, and `powf`
    /// then saturates at the boundary.
    fn clamp_interior(y: T) -> T {
        let below_one = T::one() - T::epsilon() * T::half();
        y.max(T::min_positive_value()).min(below_one)
    }

    /// Quantile F⁻¹(u) = [1 − (1−u)^{1/θ₂}]^{1/θ₁} for u ∈ (0,1).
    ///
    /// (1−u)^{1/θ₂} is formed as exp(ln(1−u)/θ₂) and the outer 1−·
    /// through `exp_m1`, so the result stays accurate when θ₂ is huge and
    /// the inner power is close to 1. When the exact quantile falls below
    /// the smallest positive float (or above the largest value < 1) the
    /// nearest representable interior value is returned.
    pub fn quantile(&self, u: T) -> Result<T, DistError> {
        self.check_u(u)?;
        let inner = -((-u).ln_1p() / self.theta2).exp_m1();
        Ok(Self::clamp_interior(inner.powf(self.theta1.recip())))
    }

    /// Upper-tail quantile F⁻¹(1 − tail) = [1 − tail^{1/θ₂}]^{1/θ₁}.
    ///
    /// Equivalent to `quantile(1 − tail)` but parameterized by the tail mass
    /// itself, avoiding the 1−· rounding before the call. Control limits use
    /// this so that a stated false-alarm rate is honored to full precision.
    pub fn upper_quantile(&self, tail: T) -> Result<T, DistError> {
        self.check_u(tail)?;
        let inner = -(tail.ln() / self.theta2).exp_m1();
        Ok(Self::clamp_interior(inner.powf(self.theta1.recip())))
    }

    /// Median F⁻¹(1/2).
    pub fn median(&self) -> T {
        self.quantile(T::half()).expect("1/2 is interior to (0,1)")
    }

    // ------------------------------------------------------------------
    // Moments
    // ------------------------------------------------------------------

    /// E[Y] = θ₂ B(1 + 1/θ₁, θ₂).
    pub fn mean(&self) -> T {
        let a = T::one() + self.theta1.recip();
        let lb = special::ln_beta(a, self.theta2).expect("moment arguments are positive");
        self.theta2 * lb.exp()
    }

    /// Var[Y] = θ₂ B(1 + 2/θ₁, θ₂) − E[Y]².
    pub fn variance(&self) -> T {
        let a = T::one() + T::cst(2.0) * self.theta1.recip();
        let lb = special::ln_beta(a, self.theta2).expect("moment arguments are positive");
        let m = self.mean();
        self.theta2 * lb.exp() - m * m
    }

    // ------------------------------------------------------------------
    // Sampling
    // ------------------------------------------------------------------

    /// One inverse-transform draw F⁻¹(U), U ~ Uniform(0,1) open.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let u: f64 = rng.sample(Open01);
        self.quantile(T::cst(u))
            .expect("Open01 uniforms are interior to (0,1)")
    }

    /// `n` independent inverse-transform draws from the given stream.
    ///
    /// Deterministic for a fixed stream state; every value is strictly
    /// inside (0,1).
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<T> {
        (0..n).map(|_| self.draw(rng)).collect()
    }
}

// ======================================================================
// Tests
// ======================================================================
