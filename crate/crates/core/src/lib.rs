//! Negative binomial mean-tail probabilities `P(NB(r, p) ≤ r(1-p)/p)`, their infimum
//! `(r/(r+1))^r` over `p`, and numerical checks of the identities behind it.
//!
//! * [`specfun`]: `ln Γ`, Beta, regularized incomplete Beta, generalized factorial and binomial.
//! * [`nbdist`]: negative binomial and Pascal masses, CDFs, and the mean-tail probability.
//! * [`chvatal`]: the per-interval infimum sequence `a_r(n)`, the global infimum, and checks.
//! * [`quadrature`]: adaptive Gauss–Kronrod integration, including `∫_a^∞` via `x = 1/u`.
//! * [`oracle`]: exact rational CDFs and a seeded Gamma–Poisson sampler.

#![allow(clippy::excessive_precision)]

pub mod chvatal;
mod error;
pub mod nbdist;
pub mod oracle;
mod prob;
pub mod quadrature;
pub mod specfun;
pub mod sum;

pub use chvatal::{Infimum, SeqEntry, SeqForm, VerifyReport};
pub use error::{Error, Result};
pub use nbdist::{IntervalIndex, NBParams};
pub use oracle::{McEstimate, Rational, SampleStream};
pub use prob::{EvalPath, ProbValue};
pub use quadrature::{Integrator, QuadResult};
pub use specfun::{RealPos, UnitInterval};
