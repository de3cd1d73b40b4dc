//! Special functions and quadrature.

mod gamma;
mod jet;
mod polylog;
pub mod quad;
mod zeta;

pub use gamma::{gamma_fn, ln_factorial, ln_gamma};
pub use polylog::{polylog, polylog_integral, polylog_series};
pub use quad::{integrate, integrate_log_scale, QuadResult, QuadratureConfig};
pub use zeta::{riemann_zeta, zeta_derivative, zeta_tail, zeta_with_derivatives};

/// `ln(e^x - 1)` without overflow for large `x`.
pub fn ln_expm1(x: f64) -> f64 {
    if x > 36.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}
