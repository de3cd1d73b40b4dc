use super::rng::RandomStream;
use super::zipf::ZipfDist;
use crate::error::{domain, Result};

/// Zipf-Poisson stopped sums: each draw is `X_1 + ... + X_N` with
/// `N ~ Poisson(lambda)` and `X_j` i.i.d. Zipf(alpha); zero when `N = 0`.
pub fn zipf_pss_sample(alpha: f64, lambda: f64, rng: &mut RandomStream, n: usize) -> Result<Vec<u64>> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return domain(format!("Zipf-PSS rate must be finite and > 0, got {lambda}"));
    }
    let zipf = ZipfDist::new(alpha)?;
    Ok((0..n)
        .map(|_| {
            let count = rng.poisson(lambda);
            (0..count).fold(0u64, |acc, _| acc.saturating_add(zipf.sample(rng)))
        })
        .collect())
}
