//! Monte Carlo evaluation of conditional run-length performance under
//! estimated parameters.
//!
//! When the limits come from a Phase I fit, the chart's run-length behavior
//! is *conditional* on the Phase I sample the practitioner happened to draw.
//! The evaluator simulates that practitioner-to-practitioner variation:
//!
//! 1. draw a Phase I sample of size `m` from the true in-control
//!    distribution,
//! 2. fit both shape parameters by maximum likelihood,
//! 3. build limits from the estimates at the chart's false-alarm rate,
//! 4. record the conditional ARL of those limits under the true process
//!    (optionally shifted), which is available in closed form.
//!
//! Replications use one [`ChaCha8Rng`] stream per replication index, derived
//! from a single master seed, so results are bit-reproducible regardless of
//! how many worker threads execute them. Keeping the fitted parameters per
//! replication ([`FitRecord`]) lets callers re-evaluate the same simulated
//! practitioners under different candidate rates or shifts — common random
//! numbers across every comparison ([`carls_from_fits`]).

use crate::chart::{
    apply_shift, conditional_arl, limits_known, limits_with, CenterMode, ChartError, LimitSource,
    ShiftSpec,
};
use crate::dist::KumaParams;
use crate::fit::{fit_mle, PhaseISample};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Error raised by the Monte Carlo evaluator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    /// Phase I sample size below the minimum needed to fit two parameters.
    #[error("phase I sample size must be at least 2, got {0}")]
    PhaseITooSmall(usize),
    /// A study with zero replications estimates nothing.
    #[error("replication count must be positive")]
    NoReplications,
    /// False-alarm rate outside the open interval `(0, 1)`.
    #[error("false-alarm rate must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),
    /// More than 1% of replications failed to produce a converged fit, so
    /// summaries over the survivors would be silently biased.
    #[error("{failed} of {total} replications failed to converge (more than 1%)")]
    TooManyFitFailures { failed: usize, total: usize },
    /// Every replication was discarded before summarizing.
    #[error("no replication produced a usable conditional ARL")]
    AllReplicationsFailed,
    /// A chart-level computation failed (limit construction or exact ARL).
    #[error(transparent)]
    Chart(#[from] ChartError),
}

/// How the estimated chart's limits are set in a study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum LimitRule {
    /// Plug-in limits at the stated rate.
    Plugin { alpha: f64 },
    /// Limits at a rate produced by the average-ARL adjustment.
    AdjustedA { alpha: f64 },
    /// Limits at a rate produced by the exceedance adjustment.
    AdjustedB { alpha: f64 },
}

impl LimitRule {
    /// False-alarm rate the limits are built at.
    pub fn alpha(&self) -> f64 {
        match *self {
            LimitRule::Plugin { alpha }
            | LimitRule::AdjustedA { alpha }
            | LimitRule::AdjustedB { alpha } => alpha,
        }
    }

    /// Provenance label for limits built under this rule.
    pub fn source(&self) -> LimitSource {
        match self {
            LimitRule::Plugin { .. } => LimitSource::Plugin,
            LimitRule::AdjustedA { .. } => LimitSource::AdjustedA,
            LimitRule::AdjustedB { .. } => LimitSource::AdjustedB,
        }
    }
}

/// One Monte Carlo study: the simulated practitioner's world.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StudyConfig {
    /// True in-control parameters the Phase I samples are drawn from.
    pub params0: KumaParams,
    /// Phase I sample size per replication.
    pub m: usize,
    /// How the estimated chart's limits are set.
    pub rule: LimitRule,
    /// Number of replications.
    pub replications: usize,
    /// Master seed; replication `r` uses stream `r + 1` of this seed.
    pub seed: u64,
}

/// Fitted parameters from one replication.
///
/// Estimates are meaningful only when `converged` is true; failed fits store
/// NaN estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitRecord {
    /// Estimate of the first shape parameter.
    pub theta1_hat: f64,
    /// Estimate of the second shape parameter.
    pub theta2_hat: f64,
    /// Whether the fit converged.
    pub converged: bool,
}

/// Conditional ARLs across replications, with the fits that produced them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlSample {
    /// Conditional ARL per usable replication, in replication order.
    pub carl_values: Vec<f64>,
    /// Fitted parameters for every replication (usable or not), kept so the
    /// same simulated practitioners can be re-evaluated under other rates.
    pub fit_records: Vec<FitRecord>,
    /// Replications discarded: failed fits plus the (rare) converged fits
    /// whose limits could not be evaluated.
    pub n_failed: usize,
}

/// Distributional summary of a conditional-ARL sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlSummary {
    /// Average conditional ARL.
    pub aarl: f64,
    /// Sample standard deviation of the conditional ARL (zero when only one
    /// replication survives).
    pub sdarl: f64,
    /// Fraction of replications with conditional ARL strictly below
    /// `reference_arl`.
    pub frac_below_reference: f64,
    /// `(level, value)` percentiles at the levels in [`PERCENTILE_LEVELS`],
    /// using linear interpolation between order statistics.
    pub percentiles: Vec<(f64, f64)>,
    /// Reference ARL the fractions are measured against (the known-parameter
    /// in-control ARL, `1 / alpha_nominal`).
    pub reference_arl: f64,
    /// Number of replications the summary is computed from.
    pub n_effective: usize,
}

/// Percentile levels reported in every [`CarlSummary`].
pub const PERCENTILE_LEVELS: [f64; 7] = [0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95];

/// One row of an out-of-control study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OocRow {
    /// Shift applied to the true process.
    pub shift: ShiftSpec,
    /// ARL of the known-parameter chart (designed at the nominal rate)
    /// under this shift — the benchmark an estimated chart is compared to.
    pub case_k_arl: f64,
    /// Conditional-ARL summary for the estimated chart under this shift.
    pub summary: CarlSummary,
    /// The raw conditional ARLs behind `summary`.
    pub carl_values: Vec<f64>,
}

/// Draws and fits `replications` Phase I samples.
///
/// Replication `r` seeds its own RNG stream (`set_stream(r + 1)` on the
/// master seed), making the output independent of thread scheduling and of
/// how many replications any particular run asks for.
///
/// # Errors
///
/// * [`McError::PhaseITooSmall`] / [`McError::NoReplications`] on a bad
///   configuration.
/// * [`McError::TooManyFitFailures`] when more than 1% of fits fail; at that
///   point summaries over the converged subset are no longer trustworthy.
pub fn simulate_fits(
    params0: KumaParams,
    m: usize,
    replications: usize,
    seed: u64,
) -> Result<Vec<FitRecord>, McError> {
    if m < 2 {
        return Err(McError::PhaseITooSmall(m));
    }
    if replications == 0 {
        return Err(McError::NoReplications);
    }
    let records: Vec<FitRecord> = (0..replications)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64 + 1);
            let draws = params0.sample(m, &mut rng);
            match PhaseISample::new(draws).and_then(|sample| fit_mle(&sample)) {
                Ok(fit) if fit.converged => FitRecord {
                    theta1_hat: fit.params_hat.theta1(),
                    theta2_hat: fit.params_hat.theta2(),
                    converged: true,
                },
                _ => FitRecord {
                    theta1_hat: f64::NAN,
                    theta2_hat: f64::NAN,
                    converged: false,
                },
            }
        })
        .collect();
    let failed = records.iter().filter(|rec| !rec.converged).count();
    check_failure_gate(failed, replications)?;
    Ok(records)
}

/// More than 1% of replications failing is a study-level error.
fn check_failure_gate(failed: usize, total: usize) -> Result<(), McError> {
    if failed * 100 > total {
        Err(McError::TooManyFitFailures { failed, total })
    } else {
        Ok(())
    }
}

/// Re-evaluates cached fits: conditional ARL of each converged replication's
/// limits (built under `rule`) when the process truly follows
/// `true_process`.
///
/// Returns the conditional ARLs in replication order plus the number of
/// replications discarded (failed fits, or limits whose signal probability
/// underflowed). Because the fits are reused, comparisons across different
/// `rule` rates or different `true_process` shifts see identical Phase I
/// randomness.
///
/// # Errors
///
/// [`McError::InvalidAlpha`] when the rule's rate is outside `(0, 1)`.
pub fn carls_from_fits(
    records: &[FitRecord],
    true_process: KumaParams,
    rule: LimitRule,
) -> Result<(Vec<f64>, usize), McError> {
    let alpha = rule.alpha();
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(McError::InvalidAlpha(alpha));
    }
    let mut carls = Vec::with_capacity(records.len());
    let mut n_failed = 0;
    for record in records {
        if !record.converged {
            n_failed += 1;
            continue;
        }
        let carl = KumaParams::new(record.theta1_hat, record.theta2_hat)
            .map_err(ChartError::from)
            .and_then(|hat| limits_with(hat, alpha, rule.source(), CenterMode::Median))
            .and_then(|limits| conditional_arl(true_process, &limits));
        match carl {
            Ok(value) => carls.push(value),
            Err(_) => n_failed += 1,
        }
    }
    Ok((carls, n_failed))
}

/// Runs one full study: simulate fits, then evaluate each replication's
/// limits under the (optionally shifted) true process.
///
/// # Errors
///
/// Everything [`simulate_fits`] and [`carls_from_fits`] can raise, plus
/// [`ChartError`] when the shift multipliers are invalid.
pub fn simulate_carl(config: &StudyConfig, shift: ShiftSpec) -> Result<CarlSample, McError> {
    let fit_records = simulate_fits(config.params0, config.m, config.replications, config.seed)?;
    let true_process = apply_shift(config.params0, shift)?;
    let (carl_values, n_failed) = carls_from_fits(&fit_records, true_process, config.rule)?;
    Ok(CarlSample {
        carl_values,
        fit_records,
        n_failed,
    })
}

/// Fraction of `values` strictly below `threshold` (zero for an empty slice).
pub fn fraction_below(values: &[f64], threshold: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().filter(|&&v| v < threshold).count() as f64 / values.len() as f64
}

/// Linear interpolation between order statistics of an ascending slice
/// (the "type 7" percentile definition used by most numeric environments).
fn type7(sorted: &[f64], level: f64) -> f64 {
    let n = sorted.len();
    let h = (n - 1) as f64 * level;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Summarizes a conditional-ARL sample against a reference in-control ARL.
///
/// Returns `None` for an empty sample.
pub fn summarize(carl_values: &[f64], reference_arl: f64) -> Option<CarlSummary> {
    if carl_values.is_empty() {
        return None;
    }
    let n = carl_values.len();
    let aarl = carl_values.iter().sum::<f64>() / n as f64;
    let sdarl = if n > 1 {
        let ss: f64 = carl_values.iter().map(|&v| (v - aarl).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let mut sorted = carl_values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("conditional ARLs are finite"));
    let percentiles = PERCENTILE_LEVELS
        .iter()
        .map(|&level| (level, type7(&sorted, level)))
        .collect();
    Some(CarlSummary {
        aarl,
        sdarl,
        frac_below_reference: fraction_below(carl_values, reference_arl),
        percentiles,
        reference_arl,
        n_effective: n,
    })
}

/// Evaluates the estimated chart across a grid of shifts, reusing one set of
/// Phase I fits for every shift (common random numbers), and pairs each row
/// with the known-parameter benchmark ARL.
///
/// The benchmark chart is always designed at `alpha_nominal` from the true
/// parameters, and the reference ARL for every summary is
/// `1 / alpha_nominal`, regardless of the (possibly adjusted) rate in
/// `config.rule`.
///
/// # Errors
///
/// Everything the underlying simulation can raise, plus
/// [`McError::InvalidAlpha`] for a bad `alpha_nominal` and
/// [`McError::AllReplicationsFailed`] if a shift leaves no usable
/// replication.
pub fn ooc_study(
    config: &StudyConfig,
    alpha_nominal: f64,
    shifts: &[ShiftSpec],
) -> Result<Vec<OocRow>, McError> {
    if !(alpha_nominal > 0.0 && alpha_nominal < 1.0) {
        return Err(McError::InvalidAlpha(alpha_nominal));
    }
    let records = simulate_fits(config.params0, config.m, config.replications, config.seed)?;
    let known_limits = limits_known(config.params0, alpha_nominal)?;
    let reference_arl = 1.0 / alpha_nominal;
    let mut rows = Vec::with_capacity(shifts.len());
    for &shift in shifts {
        let true_process = apply_shift(config.params0, shift)?;
        let case_k_arl = conditional_arl(true_process, &known_limits)?;
        let (carl_values, _) = carls_from_fits(&records, true_process, config.rule)?;
        let summary =
            summarize(&carl_values, reference_arl).ok_or(McError::AllReplicationsFailed)?;
        rows.push(OocRow {
            shift,
            case_k_arl,
            summary,
            carl_values,
        });
    }
    Ok(rows)
}
