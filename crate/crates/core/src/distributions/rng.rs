use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma, Poisson, StandardNormal};

/// Above this rate Poisson draws use the normal approximation (relative skewness < 3e-8).
const POISSON_NORMAL_LIMIT: f64 = 1e15;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_230_817;

/// Seeded random source. Identical seeds produce identical draw sequences on every
/// platform.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent child stream, e.g. one per worker thread.
    pub fn fork(&mut self) -> Self {
        Self::new(self.rng.random())
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.sample(Open01)
    }

    pub fn standard_exponential(&mut self) -> f64 {
        Exp1.sample(&mut self.rng)
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Gamma variate with the given shape and rate (density proportional to `x^(shape-1) e^(-rate x)`).
    pub fn gamma(&mut self, shape: f64, rate: f64) -> f64 {
        let g = Gamma::new(shape, 1.0).expect("gamma shape must be positive and finite");
        g.sample(&mut self.rng) / rate
    }

    /// Poisson variate, saturating at `u64::MAX`.
    pub fn poisson(&mut self, lambda: f64) -> u64 {
        if !(lambda > 0.0) {
            return 0;
        }
        if lambda < POISSON_NORMAL_LIMIT {
            let p = Poisson::new(lambda).expect("finite positive Poisson rate");
            return saturating_u64(p.sample(&mut self.rng));
        }
        let z = self.standard_normal();
        saturating_u64((lambda + lambda.sqrt() * z).round().max(0.0))
    }
}

/// Converts a nonnegative integer-valued float, clamping values beyond `u64::MAX`.
pub(crate) fn saturating_u64(x: f64) -> u64 {
    if x >= 18_446_744_073_709_551_615.0 {
        u64::MAX
    } else {
        x as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RandomStream::new(7);
        let mut b = RandomStream::new(7);
        for _ in 0..100 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
            assert_eq!(a.poisson(3.0), b.poisson(3.0));
        }
        let mut c = RandomStream::new(8);
        assert_ne!(a.uniform().to_bits(), c.uniform().to_bits());
    }

    #[test]
    fn uniform_is_open() {
        let mut r = RandomStream::new(1);
        for _ in 0..100_000 {
            let u = r.uniform();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn gamma_and_exponential_means() {
        let mut r = RandomStream::new(3);
        let n = 200_000;
        let m: f64 = (0..n).map(|_| r.gamma(2.5, 4.0)).sum::<f64>() / n as f64;
        // mean 0.625, sd sqrt(2.5)/4 / sqrt(n)
        assert!((m - 0.625).abs() < 5.0 * 2.5f64.sqrt() / 4.0 / (n as f64).sqrt());
        let e: f64 = (0..n).map(|_| r.standard_exponential()).sum::<f64>() / n as f64;
        assert!((e - 1.0).abs() < 5.0 / (n as f64).sqrt());
    }

    #[test]
    fn poisson_edge_cases() {
        let mut r = RandomStream::new(5);
        assert_eq!(r.poisson(0.0), 0);
        let big = r.poisson(1e17);
        assert!((big as f64 - 1e17).abs() < 1e10);
        assert_eq!(saturating_u64(1e30), u64::MAX);
    }
}
