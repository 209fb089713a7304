//! Ground truth that does not share code paths with the floating-point evaluators: exact
//! rational arithmetic for natural `r`, and a seeded Monte Carlo sampler.

mod rational;
mod rng;
mod sampler;

pub use rational::{exact_cdf_rational, parse_rational, Rational};
pub use rng::Xoshiro256StarStar;
pub use sampler::{mc_cdf_estimate, nb_sample, McEstimate, SampleStream};
