use serde::Serialize;

use crate::corpus::FreqOfFreqTable;
use crate::error::{Error, Result};
use crate::roots::{safeguarded_newton, Tolerance};
use crate::specfun::{riemann_zeta, zeta_with_derivatives};

const ALPHA_MIN: f64 = 1.0 + 1e-6;
const ALPHA_MAX: f64 = 100.0;
const Z_95: f64 = 1.959_963_984_540_054;

/// Maximum likelihood estimate of the Zipf exponent with a 95% Wald interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub alpha_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub std_error: f64,
    pub log_likelihood: f64,
    /// Number of observations, `sum n_i`.
    pub n: u64,
}

/// `-alpha sum n_i ln i - n ln zeta(alpha)`.
pub fn zipf_log_likelihood(table: &FreqOfFreqTable, alpha: f64) -> Result<f64> {
    let n = table.total_words() as f64;
    Ok(-alpha * sum_log(table) - n * riemann_zeta(alpha)?.ln())
}

fn sum_log(table: &FreqOfFreqTable) -> f64 {
    table.rows().iter().map(|r| r.freq as f64 * (r.value as f64).ln()).sum()
}

/// Solves `-zeta'(alpha)/zeta(alpha) = mean ln x` for alpha in `(1 + 1e-6, 100)`.
///
/// The interval is `alpha_hat +- 1.96 / sqrt(n I(alpha_hat))` with
/// `I = zeta''/zeta - (zeta'/zeta)^2`; a lower end at or below 1 is raised to the
/// bottom of the search bracket.
pub fn zipf_fit_mle(table: &FreqOfFreqTable) -> Result<FitResult> {
    let n = table.total_words();
    let mean_log = sum_log(table) / n as f64;
    if mean_log <= 0.0 {
        return Err(Error::DegenerateSample);
    }

    // g(alpha) = -zeta'/zeta - mean_log is decreasing with g' = -I(alpha).
    let g = |a: f64| -> (f64, f64) {
        match zeta_with_derivatives(a) {
            Ok((z, d1, d2)) => {
                let r = d1 / z;
                (-r - mean_log, -(d2 / z - r * r))
            }
            Err(_) => (f64::NAN, f64::NAN),
        }
    };
    if g(ALPHA_MAX).0 > 0.0 {
        return Err(Error::NonConvergence {
            what: format!("Zipf MLE: mean log {mean_log:e} puts alpha above {ALPHA_MAX}"),
            error_estimate: f64::INFINITY,
        });
    }
    if g(ALPHA_MIN).0 < 0.0 {
        return Err(Error::NonConvergence {
            what: format!("Zipf MLE: mean log {mean_log} puts alpha below {ALPHA_MIN}"),
            error_estimate: f64::INFINITY,
        });
    }
    let start = (1.0 + 1.0 / mean_log).clamp(ALPHA_MIN, ALPHA_MAX);
    let tol = Tolerance {
        x_tol: 1e-13,
        f_tol: 1e-12 * mean_log,
    };
    let alpha_hat = safeguarded_newton(g, ALPHA_MIN, ALPHA_MAX, start, tol)?;

    let info = -g(alpha_hat).1;
    let std_error = 1.0 / (n as f64 * info).sqrt();
    let half = Z_95 * std_error;
    Ok(FitResult {
        alpha_hat,
        ci_low: (alpha_hat - half).max(ALPHA_MIN).min(alpha_hat),
        ci_high: alpha_hat + half,
        std_error,
        log_likelihood: zipf_log_likelihood(table, alpha_hat)?,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[(u64, u64)]) -> FreqOfFreqTable {
        FreqOfFreqTable::new(rows.iter().copied()).unwrap()
    }

    #[test]
    fn all_ones_is_degenerate() {
        assert!(matches!(zipf_fit_mle(&table(&[(1, 50)])), Err(Error::DegenerateSample)));
    }

    #[test]
    fn single_value_two_matches_bisection() {
        let fit = zipf_fit_mle(&table(&[(2, 9)])).unwrap();
        // Bisection on the moment equation using finite-difference zeta'.
        let target = 2f64.ln();
        let ratio = |a: f64| {
            let h = 1e-6;
            let d = (riemann_zeta(a + h).unwrap() - riemann_zeta(a - h).unwrap()) / (2.0 * h);
            -d / riemann_zeta(a).unwrap()
        };
        let (mut lo, mut hi) = (1.01, 50.0);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if ratio(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((fit.alpha_hat - lo).abs() < 1e-6, "{} vs {lo}", fit.alpha_hat);
    }

    #[test]
    fn interval_brackets_estimate() {
        let fit = zipf_fit_mle(&table(&[(1, 555), (2, 75), (3, 31), (13, 1)])).unwrap();
        assert!(1.0 < fit.ci_low && fit.ci_low <= fit.alpha_hat && fit.alpha_hat <= fit.ci_high);
        assert_eq!(fit.n, 662);
        let ll = zipf_log_likelihood(&table(&[(1, 555), (2, 75), (3, 31), (13, 1)]), fit.alpha_hat).unwrap();
        assert_eq!(ll, fit.log_likelihood);
    }

    #[test]
    fn likelihood_is_maximal_at_estimate() {
        let t = table(&[(1, 20), (2, 6), (3, 3), (5, 1), (9, 1)]);
        let fit = zipf_fit_mle(&t).unwrap();
        for d in [-1e-3, 1e-3] {
            assert!(zipf_log_likelihood(&t, fit.alpha_hat + d).unwrap() < fit.log_likelihood);
        }
    }
}
