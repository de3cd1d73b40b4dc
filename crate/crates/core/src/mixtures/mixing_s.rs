use serde::Serialize;

use crate::distributions::{RandomStream, ZipfDist};
use crate::error::{domain, Error, Result};
use crate::specfun::{integrate_log_scale, ln_expm1, ln_gamma, QuadResult, QuadratureConfig};

/// Mixing law of the geometric parameter `s = -ln(1 - p)`:
/// `f(s) = s^(alpha-1) / ((e^s - 1) zeta(alpha) Gamma(alpha))` on `s > 0`.
///
/// Expanding `1/(e^s - 1) = sum_x e^{-sx}` shows `f` is the Zipf(alpha)-weighted
/// mixture of Gamma(alpha, rate x) densities, which gives the sampler and an
/// independent series route for the CDF.
#[derive(Debug, Clone, Serialize)]
pub struct MixingS {
    alpha: f64,
    #[serde(skip)]
    zipf: ZipfDist,
    #[serde(skip)]
    ln_norm: f64,
}

impl MixingS {
    pub fn new(alpha: f64) -> Result<Self> {
        let zipf = ZipfDist::new(alpha)?;
        let ln_norm = zipf.zeta_alpha().ln() + ln_gamma(alpha)?;
        Ok(Self { alpha, zipf, ln_norm })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub(crate) fn ln_norm(&self) -> f64 {
        self.ln_norm
    }

    /// Density at `s`; unbounded at the origin when `alpha < 2`.
    pub fn pdf(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return domain(format!("mixing density in s is defined for s > 0, got {s}"));
        }
        Ok(self.density(s))
    }

    /// Unchecked density for `s > 0`.
    pub(crate) fn density(&self, s: f64) -> f64 {
        if s.is_infinite() {
            return 0.0;
        }
        ((self.alpha - 1.0) * s.ln() - ln_expm1(s) - self.ln_norm).exp()
    }

    /// The same law expressed in `p = 1 - e^-s`, i.e. `f(s(p)) / (1 - p)`.
    pub fn pdf_in_p(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("p must lie in (0, 1), got {p}"));
        }
        let s = -(-p).ln_1p();
        Ok(self.density(s) / (1.0 - p))
    }

    pub fn cdf(&self, s0: f64) -> f64 {
        self.cdf_with_error(s0).value
    }

    /// `int_0^s0 f(s) ds` with its quadrature error estimate. Beyond the bulk of the
    /// mass the upper tail is integrated instead and subtracted from one.
    pub fn cdf_with_error(&self, s0: f64) -> QuadResult {
        if s0.is_nan() {
            return QuadResult {
                value: f64::NAN,
                error_estimate: f64::INFINITY,
                converged: false,
            };
        }
        if s0 <= 0.0 {
            return QuadResult::exact_zero();
        }
        if s0.is_infinite() {
            return QuadResult {
                value: 1.0,
                error_estimate: 0.0,
                converged: true,
            };
        }
        let cfg = QuadratureConfig::relative(1e-13);
        let f = |s: f64| self.density(s);
        if s0 <= self.alpha {
            let r = integrate_log_scale(f, s0, &cfg);
            QuadResult {
                value: r.value.clamp(0.0, 1.0),
                ..r
            }
        } else {
            let r = crate::specfun::integrate(f, s0, f64::INFINITY, &cfg);
            QuadResult {
                value: (1.0 - r.value).clamp(0.0, 1.0),
                ..r
            }
        }
    }

    /// `X ~ Zipf(alpha)`, then `S ~ Gamma(alpha, rate X)`.
    pub fn sample(&self, rng: &mut RandomStream) -> f64 {
        let x = self.zipf.sample(rng);
        rng.gamma(self.alpha, x as f64)
    }

    pub fn sample_n(&self, rng: &mut RandomStream, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    /// Checked CDF that reports an unconverged quadrature as an error.
    pub fn try_cdf(&self, s0: f64) -> Result<f64> {
        let r = self.cdf_with_error(s0);
        if !r.converged {
            return Err(Error::NonConvergence {
                what: format!("mixing CDF in s at s0 = {s0}"),
                error_estimate: r.error_estimate,
            });
        }
        Ok(r.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    #[test]
    fn density_at_one_for_alpha_two() {
        let m = MixingS::new(2.0).unwrap();
        let exact = 1.0 / ((E - 1.0) * PI * PI / 6.0);
        assert!((m.pdf(1.0).unwrap() - exact).abs() < 1e-15);
        assert!(m.pdf(0.0).is_err());
        assert!(m.pdf(-1.0).is_err());
        assert_eq!(m.pdf(f64::INFINITY).unwrap(), 0.0);
        assert!(m.pdf(800.0).unwrap() < 1e-300);
    }

    #[test]
    fn cdf_limits_and_monotonicity() {
        let m = MixingS::new(1.5).unwrap();
        assert_eq!(m.cdf(0.0), 0.0);
        assert_eq!(m.cdf(f64::INFINITY), 1.0);
        let grid = [1e-8, 1e-3, 0.1, 1.0, 1.5, 1.6, 5.0, 30.0];
        let v: Vec<f64> = grid.iter().map(|&s| m.cdf(s)).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]), "{v:?}");
        assert!(1.0 - m.cdf(60.0) < 1e-20);
    }

    #[test]
    fn cdf_is_continuous_where_routes_switch() {
        let m = MixingS::new(3.5).unwrap();
        let below = m.cdf(3.5);
        let above = m.cdf(3.5 + 1e-12);
        assert!((below - above).abs() < 1e-12);
    }

    #[test]
    fn p_parametrisation_integrates_to_one() {
        let m = MixingS::new(2.0).unwrap();
        let r = crate::specfun::integrate(
            |p| m.pdf_in_p(p).unwrap_or(0.0),
            0.0,
            1.0,
            &QuadratureConfig::relative(1e-10),
        );
        assert!((r.value - 1.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn samples_are_positive_and_reproducible() {
        let m = MixingS::new(5.0).unwrap();
        let a = m.sample_n(&mut RandomStream::new(9), 1000);
        assert!(a.iter().all(|&s| s > 0.0));
        assert_eq!(a, m.sample_n(&mut RandomStream::new(9), 1000));
    }
}
