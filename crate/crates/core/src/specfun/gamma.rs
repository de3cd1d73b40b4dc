use crate::error::{domain, Result};

/// Gamma function for `alpha > 0`.
pub fn gamma_fn(alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= 0.0 {
        return domain(format!("gamma(alpha) requires alpha > 0, got {alpha}"));
    }
    Ok(statrs::function::gamma::gamma(alpha))
}

/// `ln Gamma(alpha)` for `alpha > 0`.
pub fn ln_gamma(alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= 0.0 {
        return domain(format!("ln_gamma(alpha) requires alpha > 0, got {alpha}"));
    }
    Ok(statrs::function::gamma::ln_gamma(alpha))
}

/// `ln(n!)`, exact summation for small `n`.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 32 {
        (2..=n).map(|k| (k as f64).ln()).sum()
    } else {
        statrs::function::gamma::ln_gamma(n as f64 + 1.0)
    }
}
