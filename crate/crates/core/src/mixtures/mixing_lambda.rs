use serde::Serialize;

use super::mixing_s::MixingS;
use crate::distributions::RandomStream;
use crate::error::{domain, Error, Result};
use crate::specfun::{integrate_log_scale, QuadResult, QuadratureConfig};

/// Above this `s` the conditional law of lambda is a point mass at zero for every
/// practical purpose (`e^s` overflows shortly after).
const S_DEGENERATE: f64 = 600.0;

/// `P(lambda <= l | s)` for the hypoexponential with rates `a = e^s - 1`, `a + 1`.
fn hypo_cdf(a: f64, l: f64) -> f64 {
    if l <= 0.0 {
        return 0.0;
    }
    if !a.is_finite() {
        return 1.0;
    }
    let decay = (-a * l).exp();
    (-(-a * l).exp_m1() + a * decay * (-l).exp_m1()).clamp(0.0, 1.0)
}

/// `P(lambda > l | s) = e^{-a l} (1 + a (1 - e^-l))`, a sum of positive terms.
fn hypo_survival(a: f64, l: f64) -> f64 {
    if l <= 0.0 {
        return 1.0;
    }
    if !a.is_finite() {
        return 0.0;
    }
    let decay = (-a * l).exp();
    if decay == 0.0 {
        return 0.0;
    }
    decay * (1.0 + a * -(-l).exp_m1())
}

/// Conditional law of lambda given `s`:
/// `f*(lambda; s) = e^s (e^s - 1) e^{-lambda e^s} (e^lambda - 1)`, the density of
/// `Exp(rate e^s - 1) + Exp(rate e^s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixingLambdaGivenS {
    s: f64,
}

impl MixingLambdaGivenS {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0) || s.is_infinite() {
            return domain(format!("conditioning value s must be finite and > 0, got {s}"));
        }
        Ok(Self { s })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    fn slow_rate(&self) -> f64 {
        self.s.exp_m1()
    }

    pub fn pdf(&self, lambda: f64) -> Result<f64> {
        if !(lambda > 0.0) {
            return domain(format!("conditional density is defined for lambda > 0, got {lambda}"));
        }
        if lambda.is_infinite() {
            return Ok(0.0);
        }
        // a b e^{-a lambda} (1 - e^{-lambda}) with b = e^s, in logs.
        let a = self.slow_rate();
        if !a.is_finite() {
            return Ok(0.0);
        }
        let ln_value = a.ln() + self.s - a * lambda + (-(-lambda).exp_m1()).ln();
        Ok(ln_value.exp())
    }

    pub fn cdf(&self, lambda: f64) -> f64 {
        hypo_cdf(self.slow_rate(), lambda)
    }

    pub fn sample(&self, rng: &mut RandomStream) -> f64 {
        hypo_sample(self.s, rng)
    }
}

fn hypo_sample(s: f64, rng: &mut RandomStream) -> f64 {
    let e1 = rng.standard_exponential();
    let e2 = rng.standard_exponential();
    e1 / s.exp_m1() + e2 * (-s).exp()
}

/// Mixing law of the zero-truncated Poisson rate that reproduces Zipf(alpha):
/// `f(lambda) = (e^lambda - 1) I(lambda) / (Gamma(alpha) zeta(alpha))` with
/// `I(lambda) = int_0^inf e^{s - lambda e^s} s^(alpha-1) ds`.
///
/// Near the origin the density grows like `ln(1/lambda)^(alpha-1)`; for large
/// lambda it decays like `lambda^-alpha / zeta(alpha)`.
#[derive(Debug, Clone, Serialize)]
pub struct MixingLambda {
    alpha: f64,
    #[serde(skip)]
    mixing_s: MixingS,
}

impl MixingLambda {
    pub fn new(alpha: f64) -> Result<Self> {
        Ok(Self {
            alpha,
            mixing_s: MixingS::new(alpha)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mixing_s(&self) -> &MixingS {
        &self.mixing_s
    }

    /// `J(lambda) = int_0^inf e^-v ln(1 + v/lambda)^(alpha-1) dv`, so that
    /// `I(lambda) = e^-lambda J(lambda) / lambda` (substitute `v = lambda (e^s - 1)`).
    fn reduced_integral(&self, lambda: f64) -> QuadResult {
        let p = self.alpha - 1.0;
        let ln_lambda = lambda.ln();
        integrate_log_scale(
            |v: f64| {
                let r = v / lambda;
                // ln(1 + r), without overflowing r for tiny lambda
                let log1p_r = if r > 1e10 {
                    v.ln() - ln_lambda + (lambda / v).ln_1p()
                } else {
                    r.ln_1p()
                };
                (-v + p * log1p_r.ln()).exp()
            },
            f64::INFINITY,
            &QuadratureConfig::relative(1e-12),
        )
    }

    /// `I(lambda, alpha) = int_0^inf e^{s - lambda e^s} s^(alpha-1) ds`.
    pub fn inner_integral(&self, lambda: f64) -> Result<QuadResult> {
        if !(lambda > 0.0) || lambda.is_infinite() {
            return domain(format!("inner integral needs finite lambda > 0, got {lambda}"));
        }
        Ok(self.reduced_integral(lambda).scaled((-lambda).exp() / lambda))
    }

    /// Density with the quadrature error estimate of the inner integral (scaled).
    pub fn pdf_with_error(&self, lambda: f64) -> Result<QuadResult> {
        if !(lambda > 0.0) {
            return domain(format!(
                "mixing density in lambda is defined for lambda > 0, got {lambda}"
            ));
        }
        if lambda.is_infinite() {
            return Ok(QuadResult::exact_zero());
        }
        let factor = -(-lambda).exp_m1() / lambda * (-self.mixing_s.ln_norm()).exp();
        Ok(self.reduced_integral(lambda).scaled(factor))
    }

    pub fn pdf(&self, lambda: f64) -> Result<f64> {
        let r = self.pdf_with_error(lambda)?;
        if !r.converged {
            return Err(Error::NonConvergence {
                what: format!("mixing density at lambda = {lambda}"),
                error_estimate: r.error_estimate,
            });
        }
        Ok(r.value)
    }

    /// `F(l) = int_0^inf f(s) H(l; s) ds` with `H` the conditional CDF.
    ///
    /// The upper tail `1 - F` is integrated instead once the lower integral passes
    /// one half, which keeps the complement accurate for large `l`.
    pub fn cdf_with_error(&self, lambda0: f64) -> QuadResult {
        if lambda0.is_nan() {
            return QuadResult {
                value: f64::NAN,
                error_estimate: f64::INFINITY,
                converged: false,
            };
        }
        if lambda0 <= 0.0 {
            return QuadResult::exact_zero();
        }
        if lambda0.is_infinite() {
            return QuadResult {
                value: 1.0,
                error_estimate: 0.0,
                converged: true,
            };
        }
        let cfg = QuadratureConfig::relative(1e-12);
        let ms = &self.mixing_s;
        let weight = |s: f64, h: f64| if s > S_DEGENERATE { 0.0 } else { ms.density(s) * h };

        let lower = integrate_log_scale(
            |s: f64| {
                let h = if s > S_DEGENERATE {
                    1.0
                } else {
                    hypo_cdf(s.exp_m1(), lambda0)
                };
                ms.density(s) * h
            },
            f64::INFINITY,
            &cfg,
        );
        if lower.value <= 0.5 {
            return QuadResult {
                value: lower.value.clamp(0.0, 1.0),
                ..lower
            };
        }
        let upper = integrate_log_scale(
            |s: f64| weight(s, hypo_survival(s.exp_m1(), lambda0)),
            f64::INFINITY,
            &cfg,
        );
        QuadResult {
            value: (1.0 - upper.value).clamp(0.0, 1.0),
            ..upper
        }
    }

    pub fn cdf(&self, lambda0: f64) -> f64 {
        self.cdf_with_error(lambda0).value
    }

    pub fn try_cdf(&self, lambda0: f64) -> Result<f64> {
        let r = self.cdf_with_error(lambda0);
        if !r.converged {
            return Err(Error::NonConvergence {
                what: format!("mixing CDF in lambda at {lambda0}"),
                error_estimate: r.error_estimate,
            });
        }
        Ok(r.value)
    }

    /// `S` from the s-mixing law, then `lambda = E1 / (e^S - 1) + E2 / e^S`.
    pub fn sample(&self, rng: &mut RandomStream) -> f64 {
        let s = self.mixing_s.sample(rng);
        hypo_sample(s, rng)
    }

    pub fn sample_n(&self, rng: &mut RandomStream, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }
}
