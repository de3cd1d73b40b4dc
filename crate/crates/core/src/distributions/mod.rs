//! Zipf, shifted geometric and zero-truncated Poisson laws, their samplers, and the
//! Zipf maximum likelihood fit.

mod fit;
mod geometric;
mod pss;
mod rng;
mod zipf;
mod ztp;

pub use fit::{zipf_fit_mle, zipf_log_likelihood, FitResult};
pub use geometric::GeometricShifted;
pub use pss::zipf_pss_sample;
pub use rng::{RandomStream, DEFAULT_SEED};
pub use zipf::{ZipfDist, HEAD_SIZE};
pub use ztp::{ztp_mean, ZtpDist};
