//! Zipf distribution toolkit.
//!
//! The Zipf law `P(X = x) = x^-alpha / zeta(alpha)` on `{1, 2, ...}` admits two exact
//! mixture representations:
//!
//! * a mixture of geometric distributions whose log-scale parameter `s = -ln(1 - p)`
//!   has density `s^(alpha-1) / ((e^s - 1) zeta(alpha) Gamma(alpha))` ([`mixtures::MixingS`]);
//! * a mixture of zero-truncated Poisson distributions with the rate density
//!   [`mixtures::MixingLambda`].
//!
//! The crate evaluates both mixing laws, samples them exactly, checks every mixture
//! identity by quadrature, and runs the frequency-of-frequencies pipeline
//! (maximum likelihood fit, moment-matched ZTP rates, Kolmogorov-Smirnov test)
//! used to examine word counts in a text.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Series coefficients are kept as published.
#![allow(clippy::excessive_precision)]

pub mod corpus;
pub mod distributions;
pub mod error;
pub mod gof;
pub mod inference;
pub mod mixtures;
pub mod roots;
pub mod specfun;

pub use error::{Error, Result};
