//! Maximum-likelihood estimation of Kumaraswamy shape parameters from a
//! Phase I calibration sample.
//!
//! The log-likelihood of an i.i.d. sample `x_1, ..., x_m` from
//! [`KumaParams`] `(theta1, theta2)` is
//!
//! ```text
//! l(theta1, theta2) = m ln(theta1 theta2)
//!                   + (theta1 - 1) sum_i ln x_i
//!                   + (theta2 - 1) sum_i ln(1 - x_i^theta1)
//! ```
//!
//! For fixed `theta1` the score in `theta2` has the closed-form root
//! `theta2_hat(theta1) = -m / sum_i ln(1 - x_i^theta1)`, so the joint
//! maximization reduces to a one-dimensional search over `theta1` on the
//! profiled likelihood. [`fit_mle`] brackets the profile maximum with a
//! log-spaced scan and refines it by golden-section search; standard errors
//! come from the inverse of the observed information (negated Hessian of the
//! log-likelihood, approximated by central finite differences).
//!
//! Estimation routines are fixed to `f64`: the optimizer's convergence
//! tolerances and the downstream run-length targets are double-precision
//! contracts, so a reduced-precision fit would silently loosen them.

use crate::dist::KumaParams;
use thiserror::Error;

/// Error raised while validating or fitting a Phase I sample.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    /// Fewer than two observations; the likelihood surface has no interior
    /// maximum in both parameters.
    #[error("phase I sample needs at least 2 observations, got {0}")]
    TooFewValues(usize),
    /// An observation outside the open unit interval (index is zero-based
    /// within the input order).
    #[error("observation {index} is {value}, outside the open interval (0, 1)")]
    ValueOutOfRange { index: usize, value: f64 },
    /// All observations are identical, so the likelihood is unbounded along
    /// a parameter ray and no maximizer exists.
    #[error("all observations are identical; the likelihood has no maximum")]
    DegenerateSample,
    /// `profile_theta2` was called with a non-positive or non-finite shape.
    #[error("theta1 must be positive and finite, got {0}")]
    InvalidTheta1(f64),
}

/// Validated Phase I calibration sample on the open unit interval.
///
/// Construction checks every observation and rejects samples that cannot
/// identify both shape parameters. Values are stored in ascending order so
/// that every downstream computation (sums, fits, standard errors) is exactly
/// invariant under permutations of the input.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseISample {
    /// Observations, sorted ascending.
    values: Vec<f64>,
    /// Cached `ln x_i`, aligned with `values`.
    ln_values: Vec<f64>,
    /// Cached `sum_i ln x_i`.
    sum_ln: f64,
}

impl PhaseISample {
    /// Validates and normalizes a sample.
    ///
    /// # Errors
    ///
    /// * [`FitError::TooFewValues`] if fewer than two observations are given.
    /// * [`FitError::ValueOutOfRange`] if any observation is not strictly
    ///   inside `(0, 1)` (NaN included).
    pub fn new(values: Vec<f64>) -> Result<Self, FitError> {
        if values.len() < 2 {
            return Err(FitError::TooFewValues(values.len()));
        }
        for (index, &value) in values.iter().enumerate() {
            if !(value > 0.0 && value < 1.0) {
                return Err(FitError::ValueOutOfRange { index, value });
            }
        }
        let mut values = values;
        values.sort_by(|a, b| a.partial_cmp(b).expect("validated values are ordered"));
        let ln_values: Vec<f64> = values.iter().map(|&x| x.ln()).collect();
        let sum_ln = ln_values.iter().sum();
        Ok(Self {
            values,
            ln_values,
            sum_ln,
        })
    }

    /// Number of observations `m`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when the sample holds no observations (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Observations in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `sum_i ln(1 - x_i^theta1)`, the pivotal statistic of the profiled
    /// likelihood. Always negative for interior data unless `x_i^theta1`
    /// underflows to zero for every observation.
    fn tail_log_sum(&self, theta1: f64) -> f64 {
        self.ln_values
            .iter()
            .map(|&ln_x| (-(theta1 * ln_x).exp()).ln_1p())
            .sum()
    }

    fn m_f64(&self) -> f64 {
        self.values.len() as f64
    }

    /// True when every observation equals the first one bit-for-bit.
    fn is_constant(&self) -> bool {
        self.values.iter().all(|&x| x == self.values[0])
    }
}

/// Outcome of a maximum-likelihood fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    /// Estimated shape parameters.
    pub params_hat: KumaParams,
    /// Asymptotic standard errors `(se(theta1_hat), se(theta2_hat))` from the
    /// inverse observed information; both zero when the information matrix is
    /// not positive definite (in which case `converged` is false).
    pub std_errors: (f64, f64),
    /// Log-likelihood at `params_hat`.
    pub loglik: f64,
    /// True when the optimizer met its tolerances, the score is numerically
    /// zero at the estimate, and the observed information is positive
    /// definite.
    pub converged: bool,
}

/// Log-likelihood of `sample` under `params`.
///
/// Equals `sum_i ln f(x_i; theta1, theta2)` for the Kumaraswamy density; the
/// closed form avoids per-point density evaluations.
pub fn log_likelihood(params: KumaParams, sample: &PhaseISample) -> f64 {
    let m = sample.m_f64();
    let theta1 = params.theta1();
    let theta2 = params.theta2();
    m * (theta1 * theta2).ln()
        + (theta1 - 1.0) * sample.sum_ln
        + (theta2 - 1.0) * sample.tail_log_sum(theta1)
}

/// Conditional maximizer `theta2_hat(theta1) = -m / sum_i ln(1 - x_i^theta1)`.
///
/// # Errors
///
/// [`FitError::InvalidTheta1`] if `theta1` is not positive and finite, or if
/// `x_i^theta1` underflows to zero for every observation so the statistic
/// degenerates.
pub fn profile_theta2(theta1: f64, sample: &PhaseISample) -> Result<f64, FitError> {
    if !(theta1 > 0.0 && theta1.is_finite()) {
        return Err(FitError::InvalidTheta1(theta1));
    }
    let t = sample.tail_log_sum(theta1);
    let theta2 = -sample.m_f64() / t;
    if t >= 0.0 || !theta2.is_finite() {
        return Err(FitError::InvalidTheta1(theta1));
    }
    Ok(theta2)
}

/// Profiled log-likelihood `l(theta1, theta2_hat(theta1))` and the paired
/// `theta2_hat`. Returns negative infinity outside the admissible region so
/// the search can evaluate it freely.
///
/// The objective works with `ln theta2_hat = ln m - ln(-t)` rather than the
/// ratio itself: for very large `theta1` the statistic `-t` is subnormal and
/// the ratio overflows, which would turn an (honestly terrible) objective
/// value into a spurious `+inf` and hijack the search. The returned
/// `theta2_hat` can still be infinite out there; the search never settles in
/// that region because the objective stays finite and steeply negative.
fn profiled_loglik(theta1: f64, sample: &PhaseISample) -> (f64, f64) {
    if !(theta1 > 0.0 && theta1.is_finite()) {
        return (f64::NEG_INFINITY, f64::NAN);
    }
    let t = sample.tail_log_sum(theta1);
    if t >= 0.0 {
        return (f64::NEG_INFINITY, f64::NAN);
    }
    let m = sample.m_f64();
    let ln_theta2_hat = m.ln() - (-t).ln();
    let ll = m * theta1.ln() + m * ln_theta2_hat + (theta1 - 1.0) * sample.sum_ln - m - t;
    (ll, -m / t)
}

/// Score vector of the log-likelihood at `params`.
fn score(params: KumaParams, sample: &PhaseISample) -> (f64, f64) {
    let theta1 = params.theta1();
    let theta2 = params.theta2();
    let m = sample.m_f64();
    let mut t = 0.0;
    let mut d_t = 0.0;
    for &ln_x in &sample.ln_values {
        // w = x^theta1, computed via the cached logarithm.
        let w = (theta1 * ln_x).exp();
        t += (-w).ln_1p();
        d_t += ln_x * w / (1.0 - w);
    }
    let g1 = m / theta1 + sample.sum_ln - (theta2 - 1.0) * d_t;
    let g2 = m / theta2 + t;
    (g1, g2)
}

/// Central-difference Hessian of the log-likelihood at `params`.
fn hessian(params: KumaParams, sample: &PhaseISample) -> [[f64; 2]; 2] {
    let theta = [params.theta1(), params.theta2()];
    let step = [(1e-4 * theta[0]).max(1e-6), (1e-4 * theta[1]).max(1e-6)];
    let eval = |t1: f64, t2: f64| {
        let params = KumaParams::new(t1, t2).expect("perturbed parameters stay positive");
        log_likelihood(params, sample)
    };
    let ll0 = eval(theta[0], theta[1]);
    let h11 = (eval(theta[0] + step[0], theta[1]) - 2.0 * ll0 + eval(theta[0] - step[0], theta[1]))
        / (step[0] * step[0]);
    let h22 = (eval(theta[0], theta[1] + step[1]) - 2.0 * ll0 + eval(theta[0], theta[1] - step[1]))
        / (step[1] * step[1]);
    let h12 = (eval(theta[0] + step[0], theta[1] + step[1])
        - eval(theta[0] + step[0], theta[1] - step[1])
        - eval(theta[0] - step[0], theta[1] + step[1])
        + eval(theta[0] - step[0], theta[1] - step[1]))
        / (4.0 * step[0] * step[1]);
    [[h11, h12], [h12, h22]]
}

/// Standard errors from the inverse observed information, or `None` when the
/// negated Hessian is not positive definite.
fn standard_errors(h: [[f64; 2]; 2]) -> Option<(f64, f64)> {
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    // -H is positive definite iff h11 < 0 and det(H) > 0.
    if !(h[0][0] < 0.0 && det > 0.0) {
        return None;
    }
    let var1 = -h[1][1] / det;
    let var2 = -h[0][0] / det;
    if var1 > 0.0 && var2 > 0.0 {
        Some((var1.sqrt(), var2.sqrt()))
    } else {
        None
    }
}

/// Coarse log-spaced scan bounds for the profile search.
const SCAN_LO: f64 = 1e-3;
const SCAN_HI: f64 = 1e3;
/// Hard bounds when the scan maximum sits on an edge and must be pushed out.
const EXPAND_LO: f64 = 1e-9;
const EXPAND_HI: f64 = 1e9;
const SCAN_POINTS: usize = 25;
/// Relative bracket-width tolerance on theta1.
const TOL_STEP: f64 = 1e-8;
const MAX_ITER: usize = 500;
/// Scale-free score tolerance: the gradient with respect to the
/// log-parameters, per observation, must be below this at the estimate.
const TOL_SCORE: f64 = 1e-6;

/// Maximum-likelihood fit of both Kumaraswamy shape parameters.
///
/// The profile maximum in `theta1` is bracketed by a 25-point log-spaced scan
/// of `[1e-3, 1e3]` (widened geometrically to at most `[1e-9, 1e9]` when the
/// best scan point sits on an edge) and refined by golden-section search
/// until the bracket narrows below a relative width of `1e-8`. `theta2_hat`
/// then follows in closed form.
///
/// The returned [`FitResult::converged`] is true only when the search met its
/// tolerances within 500 iterations, the joint score at the estimate has norm
/// below `1e-6 * m`, and the observed information is positive definite. On a
/// non-converged fit the best iterate found is still returned.
///
/// # Errors
///
/// [`FitError::DegenerateSample`] when all observations are identical. Other
/// pathologies (a profile maximum escaping to the hard bounds) are reported
/// through `converged = false` rather than an error.
pub fn fit_mle(sample: &PhaseISample) -> Result<FitResult, FitError> {
    if sample.is_constant() {
        return Err(FitError::DegenerateSample);
    }

    // Coarse scan: log-spaced grid, widened while the maximum hugs an edge.
    let mut lo = SCAN_LO;
    let mut hi = SCAN_HI;
    let (mut bracket, mut edge_best) = scan_bracket(sample, lo, hi);
    while bracket.is_none() && (lo > EXPAND_LO || hi < EXPAND_HI) {
        let best = edge_best.expect("scan over a finite grid yields a best point");
        if best <= lo * 1.0001 {
            lo = (lo / 1e3).max(EXPAND_LO);
        } else {
            hi = (hi * 1e3).min(EXPAND_HI);
        }
        let (b, e) = scan_bracket(sample, lo, hi);
        bracket = b;
        edge_best = e;
    }
    let (a, b) = match bracket {
        Some(pair) => pair,
        None => {
            // Monotone profile over the full admissible range: report the
            // best edge iterate without claiming convergence.
            let theta1 = edge_best.expect("scan over a finite grid yields a best point");
            let (ll, theta2) = profiled_loglik(theta1, sample);
            let params_hat =
                KumaParams::new(theta1, theta2).map_err(|_| FitError::DegenerateSample)?;
            return Ok(FitResult {
                params_hat,
                std_errors: (0.0, 0.0),
                loglik: ll,
                converged: false,
            });
        }
    };

    // Golden-section refinement on the bracket.
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let (mut a, mut b) = (a, b);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = profiled_loglik(x1, sample).0;
    let mut f2 = profiled_loglik(x2, sample).0;
    let mut iterations = 0;
    let mut met_tolerance = false;
    while iterations < MAX_ITER {
        iterations += 1;
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = profiled_loglik(x2, sample).0;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = profiled_loglik(x1, sample).0;
        }
        let mid = 0.5 * (a + b);
        if b - a < TOL_STEP * mid.abs().max(1.0) {
            met_tolerance = true;
            break;
        }
    }

    let theta1_hat = if f1 > f2 { x1 } else { x2 };
    let (loglik, theta2_hat) = profiled_loglik(theta1_hat, sample);
    let params_hat =
        KumaParams::new(theta1_hat, theta2_hat).map_err(|_| FitError::DegenerateSample)?;

    // Judge the score in log-parameter coordinates (g_i * theta_i), which is
    // invariant under rescaling of either shape parameter.
    let (g1, g2) = score(params_hat, sample);
    let (s1, s2) = (g1 * theta1_hat, g2 * theta2_hat);
    let score_ok = (s1 * s1 + s2 * s2).sqrt() / sample.m_f64() < TOL_SCORE;
    let std_errors = standard_errors(hessian(params_hat, sample));
    let converged = met_tolerance && score_ok && std_errors.is_some();

    Ok(FitResult {
        params_hat,
        std_errors: std_errors.unwrap_or((0.0, 0.0)),
        loglik,
        converged,
    })
}

/// Scans a log-spaced grid and returns either a bracket `(g[k-1], g[k+1])`
/// around an interior maximum, or the edge point holding the maximum.
fn scan_bracket(sample: &PhaseISample, lo: f64, hi: f64) -> (Option<(f64, f64)>, Option<f64>) {
    let ratio = (hi / lo).ln() / (SCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|k| lo * (ratio * k as f64).exp())
        .collect();
    let mut best_k = 0;
    let mut best_ll = f64::NEG_INFINITY;
    for (k, &theta1) in grid.iter().enumerate() {
        let (ll, _) = profiled_loglik(theta1, sample);
        if ll > best_ll {
            best_ll = ll;
            best_k = k;
        }
    }
    if best_k == 0 || best_k == SCAN_POINTS - 1 {
        (None, Some(grid[best_k]))
    } else {
        (
            Some((grid[best_k - 1], grid[best_k + 1])),
            Some(grid[best_k]),
        )
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // oracles are frozen at full precision
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::path::Path;

    fn sample_from(values: &[f64]) -> PhaseISample {
        PhaseISample::new(values.to_vec()).expect("test sample is valid")
    }

    fn shipped_phase1() -> PhaseISample {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/phase1_simulated.txt");
        let text = std::fs::read_to_string(path).expect("shipped data file exists");
        let values: Vec<f64> = text
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(|line| line.parse().expect("data file holds one number per line"))
            .collect();
        assert_eq!(values.len(), 100);
        sample_from(&values)
    }

    #[test]
    fn constructor_rejects_short_samples() {
        assert_eq!(PhaseISample::new(vec![0.5]), Err(FitError::TooFewValues(1)));
        assert_eq!(PhaseISample::new(vec![]), Err(FitError::TooFewValues(0)));
    }

    #[test]
    fn constructor_rejects_boundary_and_invalid_values() {
        for bad in [0.0, 1.0, -0.2, 1.7, f64::NAN] {
            let err = PhaseISample::new(vec![0.3, bad, 0.6]).unwrap_err();
            match err {
                FitError::ValueOutOfRange { index, value } => {
                    assert_eq!(index, 1);
                    assert!(value.is_nan() == bad.is_nan());
                    if !bad.is_nan() {
                        assert_eq!(value, bad);
                    }
                }
                other => panic!("expected range error, got {other:?}"),
            }
        }
    }

    #[test]
    fn values_are_normalized_ascending() {
        let sample = sample_from(&[0.9, 0.1, 0.5]);
        assert_eq!(sample.values(), &[0.1, 0.5, 0.9]);
        assert_eq!(sample.len(), 3);
        assert!(!sample.is_empty());
    }

    #[test]
    fn log_likelihood_is_zero_under_the_uniform_case() {
        // theta1 = theta2 = 1 is the standard uniform: density one everywhere.
        let sample = sample_from(&[0.123, 0.456, 0.789, 0.25]);
        let params = KumaParams::new(1.0, 1.0).unwrap();
        assert_eq!(log_likelihood(params, &sample), 0.0);
    }

    #[test]
    fn log_likelihood_matches_frozen_values() {
        // First five observations of the shipped Phase I file.
        let sample = sample_from(&[0.0257, 0.0397, 0.0694, 0.0757, 0.0994]);
        let ll_30 = log_likelihood(KumaParams::new(2.0, 30.0).unwrap(), &sample);
        let ll_350 = log_likelihood(KumaParams::new(2.0, 350.0).unwrap(), &sample);
        assert!((ll_30 - 5.3670731063051086).abs() < 1e-12, "got {ll_30}");
        assert!((ll_350 - 10.373150523705768).abs() < 1e-12, "got {ll_350}");
    }

    #[test]
    fn log_likelihood_matches_pointwise_density_sum() {
        let sample = sample_from(&[0.05, 0.12, 0.33, 0.48, 0.71, 0.9]);
        for (t1, t2) in [(0.7, 2.5), (2.0, 30.0), (5.0, 0.4), (1.3, 1.0)] {
            let params = KumaParams::new(t1, t2).unwrap();
            let direct: f64 = sample
                .values()
                .iter()
                .map(|&x| params.ln_pdf(x).unwrap())
                .sum();
            let closed = log_likelihood(params, &sample);
            assert!(
                (closed - direct).abs() < 1e-10 * direct.abs().max(1.0),
                "({t1}, {t2}): closed {closed} vs direct {direct}"
            );
        }
    }

    #[test]
    fn profile_theta2_matches_hand_value() {
        // For x = {0.25, 0.5, 0.75} and theta1 = 1:
        // t = ln(0.75) + ln(0.5) + ln(0.25), theta2_hat = -3 / t.
        let sample = sample_from(&[0.25, 0.5, 0.75]);
        let theta2 = profile_theta2(1.0, &sample).unwrap();
        assert!((theta2 - 1.2673609363237901).abs() < 1e-14, "got {theta2}");
    }

    #[test]
    fn profile_theta2_zeroes_the_theta2_score() {
        let sample = shipped_phase1();
        for theta1 in [0.5, 1.0, 2.0, 5.0] {
            let theta2 = profile_theta2(theta1, &sample).unwrap();
            let params = KumaParams::new(theta1, theta2).unwrap();
            let (_, g2) = score(params, &sample);
            assert!(g2.abs() < 1e-10, "theta1 {theta1}: score {g2}");
        }
    }

    #[test]
    fn profile_theta2_maximizes_over_theta2() {
        let sample = sample_from(&[0.1, 0.2, 0.4, 0.55, 0.8]);
        let theta1 = 1.5;
        let theta2_hat = profile_theta2(theta1, &sample).unwrap();
        let best = log_likelihood(KumaParams::new(theta1, theta2_hat).unwrap(), &sample);
        for factor in [0.2, 0.5, 0.9, 0.99, 1.01, 1.1, 2.0, 5.0] {
            let other = log_likelihood(
                KumaParams::new(theta1, theta2_hat * factor).unwrap(),
                &sample,
            );
            assert!(other <= best, "factor {factor}: {other} > {best}");
        }
    }

    #[test]
    fn profile_theta2_rejects_bad_theta1() {
        let sample = sample_from(&[0.25, 0.5, 0.75]);
        assert!(matches!(
            profile_theta2(0.0, &sample),
            Err(FitError::InvalidTheta1(_))
        ));
        assert!(matches!(
            profile_theta2(-2.0, &sample),
            Err(FitError::InvalidTheta1(_))
        ));
        assert!(matches!(
            profile_theta2(f64::INFINITY, &sample),
            Err(FitError::InvalidTheta1(_))
        ));
    }

    #[test]
    fn fit_recovers_shipped_phase_one_estimates() {
        let sample = shipped_phase1();
        let fit = fit_mle(&sample).unwrap();
        assert!(fit.converged);
        let t1 = fit.params_hat.theta1();
        let t2 = fit.params_hat.theta2();
        assert!((t1 - 2.006869029444).abs() < 1e-4 * t1, "theta1_hat {t1}");
        assert!((t2 - 405.4410717680).abs() < 1e-4 * t2, "theta2_hat {t2}");
        assert!(
            (fit.loglik - 239.613952921220).abs() < 1e-6,
            "ll {}",
            fit.loglik
        );
        let (se1, se2) = fit.std_errors;
        assert!((se1 - 0.1596167369).abs() < 1e-3 * se1, "se1 {se1}");
        assert!((se2 - 185.298634).abs() < 1e-3 * se2, "se2 {se2}");
    }

    #[test]
    fn fitted_loglik_dominates_nearby_parameters() {
        let sample = shipped_phase1();
        let fit = fit_mle(&sample).unwrap();
        // A reference point and a seeded cloud of alternatives.
        let at_2_400 = log_likelihood(KumaParams::new(2.0, 400.0).unwrap(), &sample);
        assert!((at_2_400 - 239.611406794299).abs() < 1e-6, "got {at_2_400}");
        assert!(fit.loglik >= at_2_400);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let p = KumaParams::new(
                fit.params_hat.theta1() * sample_factor(&mut rng),
                fit.params_hat.theta2() * sample_factor(&mut rng),
            )
            .unwrap();
            assert!(log_likelihood(p, &sample) <= fit.loglik + 1e-12);
        }
    }

    fn sample_factor(rng: &mut ChaCha8Rng) -> f64 {
        // Log-uniform multiplicative perturbation in [1/4, 4].
        let u: f64 = rng.sample(rand::distr::Open01);
        (4.0f64.ln() * (2.0 * u - 1.0)).exp()
    }

    #[test]
    fn fit_is_exactly_permutation_invariant() {
        let base = vec![
            0.0257, 0.0397, 0.0694, 0.0757, 0.0994, 0.0974, 0.0343, 0.0468,
        ];
        let mut shuffled = base.clone();
        shuffled.reverse();
        shuffled.swap(0, 3);
        let fit_a = fit_mle(&PhaseISample::new(base).unwrap()).unwrap();
        let fit_b = fit_mle(&PhaseISample::new(shuffled).unwrap()).unwrap();
        assert_eq!(fit_a, fit_b);
    }

    #[test]
    fn fit_is_consistent_on_large_simulated_samples() {
        for (t1, t2, tol1, tol2) in [(2.0, 30.0, 0.05, 1.5), (1.0, 1.0, 0.05, 0.05)] {
            let params = KumaParams::<f64>::new(t1, t2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            let draws = params.sample(100_000, &mut rng);
            let fit = fit_mle(&PhaseISample::new(draws).unwrap()).unwrap();
            assert!(fit.converged);
            let e1 = fit.params_hat.theta1();
            let e2 = fit.params_hat.theta2();
            assert!((e1 - t1).abs() < tol1, "({t1}, {t2}): theta1_hat {e1}");
            assert!((e2 - t2).abs() < tol2, "({t1}, {t2}): theta2_hat {e2}");
            assert!(fit.std_errors.0 > 0.0 && fit.std_errors.1 > 0.0);
        }
    }

    #[test]
    fn fit_rejects_constant_samples() {
        let sample = sample_from(&[0.4, 0.4, 0.4, 0.4]);
        assert_eq!(fit_mle(&sample), Err(FitError::DegenerateSample));
    }

    #[test]
    fn fit_score_is_numerically_zero_at_the_estimate() {
        let sample = shipped_phase1();
        let fit = fit_mle(&sample).unwrap();
        let (g1, g2) = score(fit.params_hat, &sample);
        let norm = (g1 * g1 + g2 * g2).sqrt();
        assert!(norm / sample.m_f64() < 1e-6, "score norm {norm}");
    }

    #[test]
    fn profile_search_matches_joint_maximization() {
        // Independent oracle: a plain Nelder-Mead on the joint likelihood in
        // log-parameter space must land on the same optimum.
        let sample = shipped_phase1();
        let fit = fit_mle(&sample).unwrap();
        let objective = |z: [f64; 2]| {
            let params = KumaParams::new(z[0].exp(), z[1].exp()).unwrap();
            -log_likelihood(params, &sample)
        };
        let start = [
            (fit.params_hat.theta1() * 1.7).ln(),
            (fit.params_hat.theta2() * 0.4).ln(),
        ];
        let (z_best, f_best) = nelder_mead(objective, start, 2000, 1e-12);
        assert!(
            (-f_best - fit.loglik).abs() < 1e-6,
            "joint {} vs profile {}",
            -f_best,
            fit.loglik
        );
        assert!((z_best[0].exp() - fit.params_hat.theta1()).abs() < 1e-4);
        assert!((z_best[1].exp() - fit.params_hat.theta2()).abs() < 1e-2);
    }

    /// Minimal Nelder-Mead minimizer used only as a test oracle.
    fn nelder_mead<F: Fn([f64; 2]) -> f64>(
        f: F,
        start: [f64; 2],
        max_iter: usize,
        tol: f64,
    ) -> ([f64; 2], f64) {
        let mut simplex = [
            start,
            [start[0] + 0.25, start[1]],
            [start[0], start[1] + 0.25],
        ];
        let mut values = simplex.map(&f);
        for _ in 0..max_iter {
            // Order the simplex by objective value.
            let mut order = [0usize, 1, 2];
            order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
            let [best, mid, worst] = order;
            if (values[worst] - values[best]).abs() < tol {
                break;
            }
            let centroid = [
                0.5 * (simplex[best][0] + simplex[mid][0]),
                0.5 * (simplex[best][1] + simplex[mid][1]),
            ];
            let reflect = [
                2.0 * centroid[0] - simplex[worst][0],
                2.0 * centroid[1] - simplex[worst][1],
            ];
            let f_reflect = f(reflect);
            if f_reflect < values[best] {
                let expand = [
                    3.0 * centroid[0] - 2.0 * simplex[worst][0],
                    3.0 * centroid[1] - 2.0 * simplex[worst][1],
                ];
                let f_expand = f(expand);
                if f_expand < f_reflect {
                    simplex[worst] = expand;
                    values[worst] = f_expand;
                } else {
                    simplex[worst] = reflect;
                    values[worst] = f_reflect;
                }
            } else if f_reflect < values[mid] {
                simplex[worst] = reflect;
                values[worst] = f_reflect;
            } else {
                let contract = [
                    0.5 * (centroid[0] + simplex[worst][0]),
                    0.5 * (centroid[1] + simplex[worst][1]),
                ];
                let f_contract = f(contract);
                if f_contract < values[worst] {
                    simplex[worst] = contract;
                    values[worst] = f_contract;
                } else {
                    for i in [mid, worst] {
                        simplex[i] = [
                            0.5 * (simplex[i][0] + simplex[best][0]),
                            0.5 * (simplex[i][1] + simplex[best][1]),
                        ];
                        values[i] = f(simplex[i]);
                    }
                }
            }
        }
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        (simplex[order[0]], values[order[0]])
    }
}
