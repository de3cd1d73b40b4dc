//! Goodness-of-fit tests: one-sample Kolmogorov-Smirnov on weighted samples and a
//! chi-square test for binned counts.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::distributions::ZipfDist;
use crate::error::{domain, Error, Result};
use crate::inference::LambdaSequence;

/// Below this value of `sqrt(n) d` the theta-function form of the limiting
/// distribution converges faster than the alternating series.
const THETA_SWITCH: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    /// Effective sample size (total weight).
    pub n: u64,
    /// Number of distinct sample points.
    pub distinct_points: usize,
    /// The sample contains tied values.
    pub ties: bool,
}

/// Supremum distance between the weighted empirical CDF of `points` (sorted,
/// distinct, with positive weights) and `cdf`.
fn weighted_distance<F: Fn(f64) -> f64>(points: impl Iterator<Item = (f64, u64)>, total: u64, cdf: F) -> f64 {
    let n = total as f64;
    let mut cum = 0u64;
    let mut d: f64 = 0.0;
    for (x, w) in points {
        let f = cdf(x);
        let before = cum as f64 / n;
        cum += w;
        let after = cum as f64 / n;
        d = d.max(after - f).max(f - before);
    }
    d.clamp(0.0, 1.0)
}

pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &LambdaSequence, cdf: F) -> f64 {
    weighted_distance(
        sample.entries().iter().map(|e| (e.lambda, e.weight)),
        sample.total_weight(),
        cdf,
    )
}

/// Asymptotic two-sided p-value `2 sum_{k>=1} (-1)^(k-1) e^(-2 k^2 n d^2)`, clamped to [0, 1].
pub fn ks_pvalue(d: f64, n: u64) -> f64 {
    if !(d > 0.0) || n == 0 {
        return 1.0;
    }
    let t = (n as f64).sqrt() * d.min(1.0);
    let p = if t < THETA_SWITCH {
        // Same function via Jacobi's identity:
        // 1 - sqrt(2 pi)/t sum_{k odd} e^(-k^2 pi^2 / (8 t^2)).
        let c = std::f64::consts::PI.powi(2) / (8.0 * t * t);
        let mut sum = 0.0;
        let mut k = 1.0f64;
        loop {
            let term = (-k * k * c).exp();
            sum += term;
            if term < 1e-16 * sum {
                break;
            }
            k += 2.0;
        }
        1.0 - (2.0 * std::f64::consts::PI).sqrt() / t * sum
    } else {
        let mut sum = 0.0;
        let mut k = 1.0f64;
        let mut sign = 1.0;
        loop {
            let term = (-2.0 * k * k * t * t).exp();
            sum += sign * term;
            if term < 1e-16 {
                break;
            }
            sign = -sign;
            k += 1.0;
        }
        2.0 * sum
    };
    p.clamp(0.0, 1.0)
}

pub fn ks_test<F: Fn(f64) -> f64>(sample: &LambdaSequence, cdf: F) -> KsResult {
    let statistic = ks_statistic(sample, cdf);
    let n = sample.total_weight();
    KsResult {
        statistic,
        p_value: ks_pvalue(statistic, n),
        n,
        distinct_points: sample.len(),
        ties: sample.entries().iter().any(|e| e.weight > 1),
    }
}

/// KS test of raw (unweighted, unsorted) draws against `cdf`.
pub fn ks_test_samples<F: Fn(f64) -> f64>(draws: &[f64], cdf: F) -> Result<KsResult> {
    if draws.is_empty() {
        return Err(Error::EmptyInput("no draws to test".into()));
    }
    if draws.iter().any(|x| x.is_nan()) {
        return domain("draws contain NaN");
    }
    let mut sorted = draws.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut points: Vec<(f64, u64)> = Vec::with_capacity(sorted.len());
    for x in sorted {
        match points.last_mut() {
            Some((last, w)) if *last == x => *w += 1,
            _ => points.push((x, 1)),
        }
    }
    let n = draws.len() as u64;
    let statistic = weighted_distance(points.iter().copied(), n, cdf);
    Ok(KsResult {
        statistic,
        p_value: ks_pvalue(statistic, n),
        n,
        distinct_points: points.len(),
        ties: points.len() < draws.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub degrees_of_freedom: u64,
    pub p_value: f64,
}

/// Pearson chi-square test of observed cell counts against cell probabilities
/// (which must sum to one).
pub fn chi_square_gof(observed: &[u64], probabilities: &[f64]) -> Result<ChiSquareResult> {
    if observed.len() != probabilities.len() || observed.len() < 2 {
        return domain("chi-square test needs matching observed/expected cells, at least two");
    }
    if probabilities.iter().any(|&p| !(p > 0.0)) {
        return domain("every cell needs positive expected probability");
    }
    let n: u64 = observed.iter().sum();
    if n == 0 {
        return Err(Error::EmptyInput("no observations".into()));
    }
    let statistic: f64 = observed
        .iter()
        .zip(probabilities)
        .map(|(&o, &p)| {
            let e = p * n as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dof = observed.len() as u64 - 1;
    let dist = ChiSquared::new(dof as f64).expect("dof >= 1");
    Ok(ChiSquareResult {
        statistic,
        degrees_of_freedom: dof,
        p_value: dist.sf(statistic),
    })
}

/// Chi-square test of integer draws against Zipf(alpha) with cells `1..=cells`
/// and one tail cell `> cells`.
pub fn chi_square_zipf(draws: &[u64], zipf: &ZipfDist, cells: u64) -> Result<ChiSquareResult> {
    if cells == 0 {
        return domain("need at least one head cell");
    }
    let mut observed = vec![0u64; cells as usize + 1];
    for &x in draws {
        if x == 0 {
            return domain("Zipf draws are >= 1");
        }
        let idx = if x > cells { cells as usize } else { x as usize - 1 };
        observed[idx] += 1;
    }
    let mut probs: Vec<f64> = (1..=cells).map(|x| zipf.pmf(x).expect("x >= 1")).collect();
    probs.push(zipf.survival(cells));
    chi_square_gof(&observed, &probs)
}
