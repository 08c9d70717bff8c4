//! Two-sided Shewhart control charts for continuous proportions on (0,1)
//! modeled by the Kumaraswamy distribution.
//!
//! The crate covers both monitoring regimes:
//!
//! * **Known parameters** — exact equal-tail probability limits from the
//!   closed-form quantile function, with exact false-alarm rates and average
//!   run lengths ([`chart`]).
//! * **Estimated parameters** — maximum-likelihood fitting of a Phase I
//!   sample ([`fit`]), plug-in limits, and Monte Carlo evaluation of the
//!   *conditional* run-length performance across hypothetical Phase I samples
//!   ([`mc`]).
//!
//! On top of the evaluator sit two false-alarm-rate calibration procedures
//! ([`calib`]): adjustment A targets the average in-control ARL, adjustment B
//! bounds the fraction of charts whose conditional ARL falls below a
//! reference (an exceedance-probability guarantee).
//!
//! The distribution mathematics ([`dist`], [`special`]) and the chart
//! formulas ([`chart`]) are generic over the floating-point scalar via
//! [`Real`]; `f64` is the default type parameter everywhere and is what the
//! estimation and simulation pipeline uses. `f32` instantiations are
//! available through the aliases at the crate root.

// Validation guards are written `!(x > lo && x < hi)` on purpose: the
// negated form rejects NaN, which the suggested `partial_cmp` rewrite or a
// `x <= lo` flip would silently admit.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calib;
pub mod chart;
pub mod dist;
pub mod fit;
pub mod mc;
pub mod scalar;
pub mod special;

pub use scalar::Real;

pub use calib::{AdjustmentRequest, AdjustmentResult, CalibError, Method, DEFAULT_GRID_STEP};
pub use chart::{
    CenterMode, ChartError, ChartPoint, ChartRun, ControlLimits, LimitSource, PointStatus,
    ShiftSpec,
};
pub use dist::{DistError, KumaParams};
pub use fit::{FitError, FitResult, PhaseISample};
pub use mc::{
    CarlSample, CarlSummary, FitRecord, LimitRule, McError, OocRow, StudyConfig, PERCENTILE_LEVELS,
};

// ======================================================================
// Concrete scalar instantiations
// ======================================================================

/// Distribution parameters over `f32`.
pub type KumaParamsF32 = dist::KumaParams<f32>;
/// Distribution parameters over `f64` (what [`KumaParams`] defaults to).
pub type KumaParamsF64 = dist::KumaParams<f64>;
/// Control limits over `f32`.
pub type ControlLimitsF32 = chart::ControlLimits<f32>;
/// Control limits over `f64` (what [`ControlLimits`] defaults to).
pub type ControlLimitsF64 = chart::ControlLimits<f64>;
