use serde::Serialize;

use super::rng::RandomStream;
use crate::error::{domain, Result};
use crate::specfun::ln_factorial;

/// Below this rate ZTP draws use sequential inversion, above it Poisson draws
/// with zeros rejected.
const INVERSION_LIMIT: f64 = 10.0;

/// Zero-truncated Poisson law on `{1, 2, ...}`. `lambda = 0` is the point mass at 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZtpDist {
    lambda: f64,
}

/// `E[N | N >= 1] = lambda / (1 - e^-lambda)`, extended continuously by 1 at zero.
pub fn ztp_mean(lambda: f64) -> f64 {
    if lambda == 0.0 {
        1.0
    } else {
        lambda / -(-lambda).exp_m1()
    }
}

impl ZtpDist {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) || lambda.is_infinite() {
            return domain(format!("ZTP rate must be finite and >= 0, got {lambda}"));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `e^-lambda lambda^x / ((1 - e^-lambda) x!)`.
    pub fn pmf(&self, x: u64) -> f64 {
        if x == 0 {
            return 0.0;
        }
        if self.lambda == 0.0 {
            return if x == 1 { 1.0 } else { 0.0 };
        }
        let l = self.lambda;
        let log_poisson = x as f64 * l.ln() - l - ln_factorial(x);
        log_poisson.exp() / -(-l).exp_m1()
    }

    /// `(e^{lambda z} - 1) / (e^lambda - 1)`; the identity when `lambda = 0`.
    pub fn pgf(&self, z: f64) -> f64 {
        let l = self.lambda;
        if l == 0.0 {
            return z;
        }
        if l > 30.0 && z > 0.0 {
            // e^{l(z-1)} (1 - e^{-lz}) / (1 - e^{-l}) avoids inf / inf.
            return (l * (z - 1.0)).exp() * -(-l * z).exp_m1() / -(-l).exp_m1();
        }
        (l * z).exp_m1() / l.exp_m1()
    }

    pub fn mean(&self) -> f64 {
        ztp_mean(self.lambda)
    }

    pub fn sample(&self, rng: &mut RandomStream) -> u64 {
        let l = self.lambda;
        if l == 0.0 {
            return 1;
        }
        if l < INVERSION_LIMIT {
            let u = rng.uniform();
            let mut x = 1u64;
            let mut p = l / l.exp_m1();
            let mut cum = p;
            while u > cum {
                x += 1;
                p *= l / x as f64;
                if p == 0.0 {
                    break;
                }
                cum += p;
            }
            return x;
        }
        loop {
            let k = rng.poisson(l);
            if k >= 1 {
                return k;
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

    #[test]
    fn degenerate_at_zero() {
        let d = ZtpDist::new(0.0).unwrap();
        assert_eq!(d.pmf(1), 1.0);
        assert_eq!(d.pmf(2), 0.0);
        assert_eq!(d.pgf(0.37), 0.37);
        assert_eq!(d.mean(), 1.0);
        let mut rng = RandomStream::new(1);
        assert!(d.sample_n(&mut rng, 100).iter().all(|&x| x == 1));
    }

    #[test]
    fn pmf_matches_normalised_poisson() {
        let e1 = (-1f64).exp();
        let d = ZtpDist::new(1.0).unwrap();
        assert!((d.pmf(1) - e1 / (1.0 - e1)).abs() < 1e-15);
        assert!((d.pmf(1) - 0.581_977).abs() < 1e-6);
        for &l in &[0.01, 1.0, 7.5, 40.0] {
            let d = ZtpDist::new(l).unwrap();
            let mut poisson = (-l).exp();
            let mut total = 0.0;
            for x in 1..400u64 {
                poisson *= l / x as f64;
                let oracle = poisson / (1.0 - (-l).exp());
                assert!((d.pmf(x) - oracle).abs() <= 1e-12 * oracle.max(1e-300));
                total += d.pmf(x);
            }
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pgf_matches_series() {
        let d = ZtpDist::new(2.0).unwrap();
        let e = 1f64.exp();
        let closed = (e - 1.0) / (e * e - 1.0);
        assert!((d.pgf(0.5) - closed).abs() < 1e-15);
        assert!((d.pgf(0.5) - 0.268_941).abs() < 1e-6);
        let series: f64 = (1..100u64).map(|x| 0.5f64.powi(x as i32) * d.pmf(x)).sum();
        assert!((series - closed).abs() < 1e-15);
        for &l in &[0.5, 2.0, 100.0, 1e4] {
            assert!((ZtpDist::new(l).unwrap().pgf(1.0) - 1.0).abs() < 1e-14);
        }
        assert!(ZtpDist::new(800.0).unwrap().pgf(0.9).is_finite());
        assert!(ZtpDist::new(800.0).unwrap().pgf(-0.9).abs() < 1e-300);
    }

    #[test]
    fn mean_properties() {
        assert_eq!(ztp_mean(0.0), 1.0);
        assert!((ztp_mean(1e-12) - 1.0).abs() < 1e-12);
        assert!((ztp_mean(1.593_624_260_040_04) - 2.0).abs() < 1e-12);
        assert!((ztp_mean(50.0) - 50.0).abs() < 1e-15 * 50.0 + 1e-19);
        let grid: Vec<f64> = (0..2000).map(|i| f64::from(i) * 0.01).collect();
        assert!(grid.windows(2).all(|w| ztp_mean(w[1]) > ztp_mean(w[0])));
    }

    #[test]
    fn rejects_bad_rate() {
        assert!(ZtpDist::new(-0.1).is_err());
        assert!(ZtpDist::new(f64::NAN).is_err());
        assert!(ZtpDist::new(f64::INFINITY).is_err());
    }

    #[test]
    fn samplers_are_deterministic() {
        for &l in &[0.3, 25.0] {
            let d = ZtpDist::new(l).unwrap();
            let a = d.sample_n(&mut RandomStream::new(4), 50);
            let b = d.sample_n(&mut RandomStream::new(4), 50);
            assert_eq!(a, b);
            assert!(a.iter().all(|&x| x >= 1));
        }
    }
}
