//! Real polylogarithm `Li_alpha(z)` for `alpha > 0` and real `z <= 1`.
//!
//! Two independent routes are provided: the power series `sum z^x / x^alpha`
//! (valid for `|z| < 1`) and the Bose-Einstein integral
//! `z / Gamma(alpha) * int_0^inf t^(alpha-1) / (e^t - z) dt` (valid for every real `z < 1`).
//! [`polylog`] uses the series where it converges geometrically fast and the
//! integral elsewhere.

use super::gamma::ln_gamma;
use super::quad::{integrate_log_scale, QuadratureConfig};
use super::zeta::riemann_zeta;
use crate::error::{domain, Error, Result};

/// Beyond this `|z|` the series needs hundreds of terms and the integral takes over.
const SERIES_RADIUS: f64 = 0.9;

const MAX_SERIES_TERMS: u64 = 50_000_000;

fn check_order(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha <= 0.0 {
        return domain(format!("polylog order must be positive, got {alpha}"));
    }
    Ok(())
}

/// `Li_alpha(z)`; `Li_alpha(1) = zeta(alpha)` when `alpha > 1`.
pub fn polylog(alpha: f64, z: f64) -> Result<f64> {
    check_order(alpha)?;
    if z.is_nan() {
        return domain("polylog argument is NaN");
    }
    if z > 1.0 {
        return domain(format!("real polylog is only provided for z <= 1, got z = {z}"));
    }
    if z == 1.0 {
        return riemann_zeta(alpha);
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z.abs() <= SERIES_RADIUS {
        polylog_series(alpha, z)
    } else {
        polylog_integral(alpha, z)
    }
}

/// Power series `sum_{x >= 1} z^x / x^alpha` for `|z| < 1`.
///
/// Negative arguments are summed in consecutive pairs so that each added quantity
/// has a fixed sign.
pub fn polylog_series(alpha: f64, z: f64) -> Result<f64> {
    check_order(alpha)?;
    if !(z.abs() < 1.0) {
        return domain(format!("polylog series requires |z| < 1, got z = {z}"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }

    let term = |n: u64, zn: f64| zn * (n as f64).powf(-alpha);
    let mut sum = 0.0;
    let mut zn = 1.0;
    let mut n = 0u64;
    let step = if z < 0.0 { 2 } else { 1 };
    loop {
        let mut chunk = 0.0;
        for _ in 0..step {
            n += 1;
            zn *= z;
            chunk += term(n, zn);
        }
        sum += chunk;
        if chunk.abs() <= 1e-17 * sum.abs() || zn == 0.0 {
            return Ok(sum);
        }
        if n >= MAX_SERIES_TERMS {
            return Err(Error::NonConvergence {
                what: format!("polylog series at z = {z}"),
                error_estimate: chunk.abs(),
            });
        }
    }
}

/// `ln(e^t - z)` for `t > 0`, `z < 1`.
fn ln_bose_denominator(t: f64, z: f64) -> f64 {
    if t > 36.0 {
        t + (-z * (-t).exp()).ln_1p()
    } else {
        (t.exp_m1() + (1.0 - z)).ln()
    }
}

/// Bose-Einstein integral representation, valid for every real `z < 1`.
pub fn polylog_integral(alpha: f64, z: f64) -> Result<f64> {
    check_order(alpha)?;
    if z.is_nan() || z >= 1.0 {
        return domain(format!("polylog integral requires z < 1, got z = {z}"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let log_norm = ln_gamma(alpha)?;
    let integrand = |t: f64| ((alpha - 1.0) * t.ln() - log_norm - ln_bose_denominator(t, z)).exp();
    let r = integrate_log_scale(integrand, f64::INFINITY, &QuadratureConfig::relative(1e-13));
    if !r.converged {
        return Err(Error::NonConvergence {
            what: format!("polylog integral at alpha = {alpha}, z = {z}"),
            error_estimate: r.error_estimate,
        });
    }
    Ok(z * r.value)
}
