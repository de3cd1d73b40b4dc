use serde::Serialize;

use super::rng::{saturating_u64, RandomStream};
use crate::error::{domain, Result};

/// Geometric law on `{1, 2, ...}` with success probability `p = 1 - e^-s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometricShifted {
    s: f64,
}

impl GeometricShifted {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0) {
            return domain(format!("geometric log-scale parameter must be > 0, got {s}"));
        }
        Ok(Self { s })
    }

    /// From the success probability `p` in (0, 1).
    pub fn from_p(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("geometric success probability must lie in (0, 1), got {p}"));
        }
        Self::new(-(-p).ln_1p())
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn p(&self) -> f64 {
        -(-self.s).exp_m1()
    }

    /// `e^{-s(x-1)} (1 - e^{-s})`; zero off the support.
    pub fn pmf(&self, x: u64) -> f64 {
        if x == 0 {
            return 0.0;
        }
        (-self.s * (x - 1) as f64).exp() * self.p()
    }

    /// `(e^s - 1) z / (e^s - z)` for `z < e^s`.
    pub fn pgf(&self, z: f64) -> Result<f64> {
        // Same ratio scaled by e^-s, which stays finite for large s.
        let q = (-self.s).exp();
        let denom = 1.0 - z * q;
        if z.is_nan() || !(denom > 0.0) {
            return domain(format!(
                "geometric PGF has a pole at z = e^s; got z = {z}, s = {}",
                self.s
            ));
        }
        Ok(self.p() * z / denom)
    }

    pub fn sample(&self, rng: &mut RandomStream) -> u64 {
        let e = rng.standard_exponential();
        saturating_u64((e / self.s).floor()).saturating_add(1)
    }
}
