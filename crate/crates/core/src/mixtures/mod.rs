//! Geometric and zero-truncated Poisson mixture representations of the Zipf law:
//! the two mixing densities, their CDFs, exact hierarchical samplers and
//! quadrature checks of the mixture identities.

mod mixing_lambda;
mod mixing_s;
mod verify;

pub use mixing_lambda::{MixingLambda, MixingLambdaGivenS};
pub use mixing_s::MixingS;
pub use verify::{
    check_not_ztmp, is_strictly_decreasing, verify_geometric_mixture, verify_pgf_mixtures, verify_ztp_mixture,
    ErrorScale, IdentityReport, INNER_S_GRID,
};

use crate::distributions::{GeometricShifted, RandomStream, ZtpDist};
use crate::error::Result;

/// Zipf draws through the geometric mixture: `S ~ f(s)`, then `X ~ Geometric(s)`.
pub fn sample_zipf_via_geometric(alpha: f64, rng: &mut RandomStream, n: usize) -> Result<Vec<u64>> {
    let mixing = MixingS::new(alpha)?;
    Ok((0..n)
        .map(|_| {
            let s = mixing.sample(rng);
            match GeometricShifted::new(s) {
                Ok(g) => g.sample(rng),
                // s underflowed to zero: the geometric law has escaped to infinity.
                Err(_) => u64::MAX,
            }
        })
        .collect())
}

/// Zipf draws through the ZTP mixture: `lambda ~ f(lambda)`, then `X ~ ZTP(lambda)`.
pub fn sample_zipf_via_ztp(alpha: f64, rng: &mut RandomStream, n: usize) -> Result<Vec<u64>> {
    let mixing = MixingLambda::new(alpha)?;
    Ok((0..n)
        .map(|_| {
            let l = mixing.sample(rng);
            match ZtpDist::new(l) {
                Ok(d) => d.sample(rng),
                Err(_) => u64::MAX,
            }
        })
        .collect())
}
