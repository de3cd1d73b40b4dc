use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::rng::{saturating_u64, RandomStream};
use crate::error::{domain, Error, Result};
use crate::specfun::{polylog, riemann_zeta, zeta_tail};

/// Values `1..=HEAD_SIZE` are sampled by inversion of a cumulative table,
/// larger values by rejection from a discretised Pareto envelope.
pub const HEAD_SIZE: usize = 10_000;

/// Zipf law `P(X = x) = x^-alpha / zeta(alpha)` on `{1, 2, ...}`.
#[derive(Debug, Clone)]
pub struct ZipfDist {
    alpha: f64,
    zeta_alpha: f64,
    head: OnceLock<Arc<Vec<f64>>>,
}

#[derive(Debug, Serialize)]
struct ZipfParams {
    alpha: f64,
    zeta_alpha: f64,
}

impl Serialize for ZipfDist {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ZipfParams {
            alpha: self.alpha,
            zeta_alpha: self.zeta_alpha,
        }
        .serialize(s)
    }
}

impl ZipfDist {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 1.0 {
            return domain(format!("Zipf exponent must be finite and > 1, got {alpha}"));
        }
        Ok(Self {
            alpha,
            zeta_alpha: riemann_zeta(alpha)?,
            head: OnceLock::new(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn zeta_alpha(&self) -> f64 {
        self.zeta_alpha
    }

    /// Unnormalised partial sums `sum_{i <= x} i^-alpha` for `x = 1..=HEAD_SIZE`.
    fn head(&self) -> &[f64] {
        self.head.get_or_init(|| {
            let mut acc = 0.0;
            Arc::new(
                (1..=HEAD_SIZE)
                    .map(|x| {
                        acc += (x as f64).powf(-self.alpha);
                        acc
                    })
                    .collect(),
            )
        })
    }

    pub fn pmf(&self, x: u64) -> Result<f64> {
        if x == 0 {
            return domain("Zipf support starts at 1");
        }
        Ok((x as f64).powf(-self.alpha) / self.zeta_alpha)
    }

    pub fn ln_pmf(&self, x: u64) -> Result<f64> {
        if x == 0 {
            return domain("Zipf support starts at 1");
        }
        Ok(-self.alpha * (x as f64).ln() - self.zeta_alpha.ln())
    }

    /// Slope of the log-log PMF between two support points; always `-alpha`.
    pub fn log_pmf_slope(&self, x1: u64, x2: u64) -> Result<f64> {
        if x1 == x2 {
            return domain("slope needs two distinct support points");
        }
        let rise = self.ln_pmf(x2)? - self.ln_pmf(x1)?;
        Ok(rise / ((x2 as f64).ln() - (x1 as f64).ln()))
    }

    /// `P(X <= x)`; zero for `x = 0`.
    pub fn cdf(&self, x: u64) -> f64 {
        match x {
            0 => 0.0,
            x if x as usize <= HEAD_SIZE => self.head()[x as usize - 1] / self.zeta_alpha,
            x => {
                let tail = zeta_tail(self.alpha, x + 1).expect("alpha > 1 checked at construction");
                1.0 - tail / self.zeta_alpha
            }
        }
    }

    /// `P(X > x)`, computed directly so small tails keep their relative accuracy.
    pub fn survival(&self, x: u64) -> f64 {
        if x == 0 {
            return 1.0;
        }
        zeta_tail(self.alpha, x + 1).expect("alpha > 1 checked at construction") / self.zeta_alpha
    }

    /// `E[X^k] = zeta(alpha - k) / zeta(alpha)`, finite iff `alpha > k + 1`.
    pub fn moment(&self, k: u32) -> Result<f64> {
        if k == 0 {
            return Ok(1.0);
        }
        if self.alpha <= f64::from(k) + 1.0 {
            return Err(Error::NonFiniteMoment {
                order: k,
                alpha: self.alpha,
            });
        }
        Ok(riemann_zeta(self.alpha - f64::from(k))? / self.zeta_alpha)
    }

    pub fn mean(&self) -> Result<f64> {
        self.moment(1)
    }

    /// `(zeta(a-2) zeta(a) - zeta(a-1)^2) / zeta(a)^2`, finite iff `alpha > 3`.
    pub fn variance(&self) -> Result<f64> {
        if self.alpha <= 3.0 {
            return Err(Error::NonFiniteMoment {
                order: 2,
                alpha: self.alpha,
            });
        }
        let z1 = riemann_zeta(self.alpha - 1.0)?;
        let z2 = riemann_zeta(self.alpha - 2.0)?;
        let z = self.zeta_alpha;
        Ok((z2 * z - z1 * z1) / (z * z))
    }

    /// PGF `Li_alpha(z) / zeta(alpha)` for real `z <= 1`.
    pub fn pgf(&self, z: f64) -> Result<f64> {
        if z > 1.0 {
            return domain(format!("Zipf PGF diverges for z = {z} > 1"));
        }
        if z == 1.0 {
            return Ok(1.0);
        }
        Ok(polylog(self.alpha, z)? / self.zeta_alpha)
    }

    /// One exact draw. Values beyond `u64::MAX` (only plausible for alpha close to 1)
    /// saturate.
    pub fn sample(&self, rng: &mut RandomStream) -> u64 {
        let head = self.head();
        let head_mass = head[HEAD_SIZE - 1];
        let u = rng.uniform() * self.zeta_alpha;
        if u < head_mass {
            let idx = head.partition_point(|&c| c <= u);
            return idx.min(HEAD_SIZE - 1) as u64 + 1;
        }
        self.sample_tail(rng)
    }

    /// Draw from `X | X > HEAD_SIZE`: propose `floor(Y)` with `Y` Pareto on
    /// `[HEAD_SIZE + 1, inf)`, accept with probability
    /// `x^-alpha / (M int_x^{x+1} y^-alpha dy)`.
    fn sample_tail(&self, rng: &mut RandomStream) -> u64 {
        let a = self.alpha;
        let start = (HEAD_SIZE + 1) as f64;
        let envelope = (1.0 + 1.0 / start).powf(a);
        loop {
            let y = start * rng.uniform().powf(-1.0 / (a - 1.0));
            let x = y.floor();
            if !x.is_finite() || x >= 1.8e19 {
                return u64::MAX;
            }
            let cell_mass_scaled = -((1.0 - a) * (1.0 / x).ln_1p()).exp_m1();
            let ratio = (a - 1.0) / (x * cell_mass_scaled);
            if rng.uniform() * envelope <= ratio {
                return saturating_u64(x);
            }
        }
    }

    pub fn sample_n(&self, rng: &mut RandomStream, n: usize) -> Vec<u64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pmf_reference_values() {
        let d = ZipfDist::new(2.0).unwrap();
        let p1 = 6.0 / (PI * PI);
        assert!((d.pmf(1).unwrap() - p1).abs() < 1e-15);
        assert!((d.pmf(2).unwrap() - p1 / 4.0).abs() < 1e-15);
        assert!((d.cdf(1) - p1).abs() < 1e-15);
        assert!(d.pmf(0).is_err());
    }

    #[test]
    fn rejects_invalid_exponent() {
        assert!(ZipfDist::new(1.0).is_err());
        assert!(ZipfDist::new(0.3).is_err());
        assert!(ZipfDist::new(f64::NAN).is_err());
        assert!(ZipfDist::new(f64::INFINITY).is_err());
    }

    #[test]
    fn slope_is_minus_alpha() {
        for &(a, x1, x2) in &[(1.5, 1, 10), (5.0, 2, 4), (2.37, 3, 17), (3.0, 1000, 7)] {
            let d = ZipfDist::new(a).unwrap();
            assert!((d.log_pmf_slope(x1, x2).unwrap() + a).abs() <= 1e-12);
        }
        assert!(ZipfDist::new(2.0).unwrap().log_pmf_slope(3, 3).is_err());
    }

    #[test]
    fn cdf_ten_terms() {
        let d = ZipfDist::new(2.0).unwrap();
        let oracle: f64 = (1..=10).map(|x| 1.0 / f64::from(x * x)).sum::<f64>() / (PI * PI / 6.0);
        assert!((d.cdf(10) - oracle).abs() < 1e-14);
        assert!((d.cdf(10) - 0.942_145_805).abs() < 1e-9);
    }

    #[test]
    fn cdf_monotone_across_table_boundary() {
        let d = ZipfDist::new(1.5).unwrap();
        let xs = [1, 10, 9_999, 10_000, 10_001, 10_002, 1_000_000, u64::MAX / 2];
        let values: Vec<f64> = xs.iter().map(|&x| d.cdf(x)).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
        assert!((d.cdf(10_000) + d.survival(10_000) - 1.0).abs() < 1e-13);
        assert!(1.0 - values[7] < 1e-8);
    }

    #[test]
    fn moments() {
        let d = ZipfDist::new(3.0).unwrap();
        let expected = (PI * PI / 6.0) / 1.202_056_903_159_594_2;
        assert!((d.moment(1).unwrap() - expected).abs() < 1e-12);
        assert!((d.mean().unwrap() - 1.368_432_8).abs() < 1e-7);
        assert!(matches!(
            ZipfDist::new(2.0).unwrap().moment(1),
            Err(Error::NonFiniteMoment { order: 1, .. })
        ));
        assert!(ZipfDist::new(3.0).unwrap().variance().is_err());
        assert!(ZipfDist::new(3.0).unwrap().moment(2).is_err());
        let d4 = ZipfDist::new(4.0).unwrap();
        let z = |a| riemann_zeta(a).unwrap();
        assert!((d4.moment(2).unwrap() - z(2.0) / z(4.0)).abs() < 1e-14);
        let v = (z(2.0) * z(4.0) - z(3.0).powi(2)) / z(4.0).powi(2);
        assert!((d4.variance().unwrap() - v).abs() < 1e-14);
    }

    #[test]
    fn pgf_boundary_values() {
        for &a in &[1.5, 2.0, 5.0] {
            let d = ZipfDist::new(a).unwrap();
            assert_eq!(d.pgf(1.0).unwrap(), 1.0);
            assert_eq!(d.pgf(0.0).unwrap(), 0.0);
            assert!(d.pgf(1.01).is_err());
        }
    }

    #[test]
    fn sampler_is_deterministic_and_in_support() {
        let d = ZipfDist::new(2.0).unwrap();
        let a = d.sample_n(&mut RandomStream::new(11), 1000);
        let b = d.sample_n(&mut RandomStream::new(11), 1000);
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x >= 1));
    }

    #[test]
    fn tail_sampler_reaches_far_values() {
        let d = ZipfDist::new(1.2).unwrap();
        let mut rng = RandomStream::new(2);
        let draws = d.sample_n(&mut rng, 20_000);
        let beyond = draws.iter().filter(|&&x| x > HEAD_SIZE as u64).count() as f64 / 20_000.0;
        let expected = d.survival(HEAD_SIZE as u64);
        let se = (expected * (1.0 - expected) / 20_000.0).sqrt();
        assert!((beyond - expected).abs() < 4.0 * se, "{beyond} vs {expected}");
    }
}
