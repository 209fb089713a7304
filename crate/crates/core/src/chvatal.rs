//! The infimum of the negative binomial mean-tail probability and numerical checks of the
//! identities that establish it.
//!
//! On the interval `(r/(n+r+1), r/(n+r)]` the mean-tail probability is a fixed partial sum
//! whose terms all increase with `p`, so its infimum over the interval is the one-sided limit
//! at the left end:
//!
//! ```text
//! a_r(n) = λ^r Σ_{k=0}^{n} binom(k+r-1, k) (1-λ)^k,   λ = r/(n+r+1)
//!        = I_λ(r, n+1)
//! ```
//!
//! The sequence increases strictly in `n`, so the global infimum is `a_r(0) = (r/(r+1))^r`,
//! approached as `p ↓ r/(r+1)` but never attained.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{domain, Result};
use crate::nbdist::{mean_tail_prob, weighted_partial_sum, NBParams};
use crate::quadrature::Integrator;
use crate::specfun::{gen_binomial, ln_beta, ln_gen_binomial_unchecked, reg_inc_beta, RealPos};
use crate::sum::{compensated_sum, CompensatedSum};

/// Which of the two equivalent expressions produced a sequence value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqForm {
    Sum,
    Integral,
}

/// One term `a_r(n)` of the per-interval infimum sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeqEntry {
    pub n: u64,
    pub value: f64,
    pub form: SeqForm,
}

/// Outcome of comparing two numerically evaluated sides of an identity or inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyReport {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub passed: bool,
    pub tolerance: f64,
}

impl VerifyReport {
    fn residuals(lhs: f64, rhs: f64) -> (f64, f64) {
        let abs_err = (lhs - rhs).abs();
        let rel_err = if rhs == 0.0 {
            abs_err
        } else {
            abs_err / rhs.abs()
        };
        (abs_err, rel_err)
    }

    /// Equality check: passes when the relative residual is within `tolerance`
    /// (absolute residual when `rhs` is zero).
    pub fn equality(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let (abs_err, rel_err) = Self::residuals(lhs, rhs);
        Self {
            lhs,
            rhs,
            abs_err,
            rel_err,
            passed: rel_err <= tolerance,
            tolerance,
        }
    }

    /// Strict inequality check: passes when `lhs - rhs > margin`.
    pub fn greater(lhs: f64, rhs: f64, margin: f64) -> Self {
        let (abs_err, rel_err) = Self::residuals(lhs, rhs);
        Self {
            lhs,
            rhs,
            abs_err,
            rel_err,
            passed: lhs - rhs > margin,
            tolerance: margin,
        }
    }

    /// Strict inequality check: passes when `rhs - lhs > margin`.
    pub fn less(lhs: f64, rhs: f64, margin: f64) -> Self {
        let mut report = Self::greater(rhs, lhs, margin);
        std::mem::swap(&mut report.lhs, &mut report.rhs);
        report
    }
}

/// An infimum value. `attained` is false for every infimum this module reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Infimum {
    pub value: f64,
    pub attained: bool,
}

/// Gap below which consecutive sequence values are not considered distinguishable.
pub const MONOTONE_NOISE_FLOOR: f64 = 1e-14;

/// Relative tolerance of [`coefficient_identity_check`].
pub const COEFFICIENT_TOLERANCE: f64 = 1e-10;

fn shape(r: f64) -> Result<f64> {
    RealPos::new(r)
        .map(RealPos::get)
        .map_err(|_| domain("chvatal", format!("r must be finite and > 0, got {r}")))
}

/// `a_r(n)` from its defining finite sum.
pub fn a_seq_sum(r: f64, n: u64) -> Result<SeqEntry> {
    let r = shape(r)?;
    let denom = n as f64 + r + 1.0;
    let lambda = r / denom;
    let complement = (n as f64 + 1.0) / denom;
    Ok(SeqEntry {
        n,
        value: weighted_partial_sum(r, lambda, complement, n),
        form: SeqForm::Sum,
    })
}

/// `a_r(n)` as the normalized partial Beta integral `I_{r/(n+1+r)}(r, n+1)`.
pub fn a_seq_integral(r: f64, n: u64) -> Result<SeqEntry> {
    let r = shape(r)?;
    let lambda = r / (n as f64 + 1.0 + r);
    Ok(SeqEntry {
        n,
        value: reg_inc_beta(lambda, r, n as f64 + 1.0)?.value(),
        form: SeqForm::Integral,
    })
}

/// `a_r(0), …, a_r(n_max)` from the sum form.
pub fn a_seq(r: f64, n_max: u64) -> Result<Vec<SeqEntry>> {
    (0..=n_max).map(|n| a_seq_sum(r, n)).collect()
}

/// Infimum of the mean-tail probability over `p ∈ (r/(n+r+1), r/(n+r)]`.
///
/// The value is `a_r(n)`, the limit as `p` decreases to the open left end; it is not attained.
pub fn interval_infimum(r: f64, n: u64) -> Result<Infimum> {
    Ok(Infimum {
        value: a_seq_sum(r, n)?.value,
        attained: false,
    })
}

/// `inf_{0<p≤1} P(NB(r, p) ≤ r(1-p)/p) = (r/(r+1))^r`.
pub fn global_infimum(r: f64) -> Result<Infimum> {
    let r = shape(r)?;
    Ok(Infimum {
        value: (r / (r + 1.0)).powf(r),
        attained: false,
    })
}

/// Checks `a_r(n+1) > a_r(n)` for `n = 0, …, n_max - 1`; each report has `lhs = a_r(n+1)`,
/// `rhs = a_r(n)` and passes when the gap exceeds [`MONOTONE_NOISE_FLOOR`].
pub fn monotonicity_check(r: f64, n_max: u64) -> Result<Vec<VerifyReport>> {
    if n_max < 1 {
        return Err(domain("monotonicity_check", "n_max must be >= 1"));
    }
    let seq = a_seq(r, n_max)?;
    Ok(seq
        .windows(2)
        .map(|w| VerifyReport::greater(w[1].value, w[0].value, MONOTONE_NOISE_FLOOR))
        .collect())
}

/// `r^r (n+1)^(n+1) / (n+r+1)^(n+r+2)`, evaluated in log form.
pub fn lemma22_closed_form(r: f64, n: u64) -> Result<f64> {
    let r = shape(r)?;
    let n1 = n as f64 + 1.0;
    let n1_term = if n == 0 { 0.0 } else { n1 * n1.ln() };
    Ok((r * r.ln() + n1_term - (n1 + r + 1.0) * (n1 + r).ln()).exp())
}

fn quadrature_tolerance(tol: f64) -> f64 {
    (tol * 1e-2).max(1e-14)
}

/// Checks the closed form
/// `∫_{(n+1+r)/r}^∞ (u-1)^n u^(-n-r-2) (r u/(n+1+r) - 1) du = r^r (n+1)^(n+1) / (n+r+1)^(n+r+2)`.
///
/// The left side is integrated numerically after the substitution `x = 1/u`, which maps it to
/// `∫_0^μ x^(r-1) (1-x)^n (μ - x) dx` with `μ = r/(n+r+1)`.
pub fn lemma22_check(r: f64, n: u64, tol: f64) -> Result<VerifyReport> {
    let r = shape(r)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(domain(
            "lemma22_check",
            format!("tol must be > 0, got {tol}"),
        ));
    }
    let nf = n as f64;
    let mu = r / (nf + r + 1.0);
    let lower = (nf + 1.0 + r) / r;
    let n_exp = i32::try_from(n).map_err(|_| domain("lemma22_check", "n too large"))?;
    let integrand = move |u: f64| ((u - 1.0) / u).powi(n_exp) * u.powf(-r - 2.0) * (mu * u - 1.0);

    let lhs = Integrator::with_tolerances(0.0, quadrature_tolerance(tol))
        .left_endpoint_power(r)
        .integrate_reciprocal_tail(integrand, lower)?
        .value;
    let rhs = lemma22_closed_form(r, n)?;
    Ok(VerifyReport::equality(lhs, rhs, tol))
}

/// `g(u) = (u-1)^(n+1) u^(-n-r-2)`.
fn g(r: f64, n: i32, u: f64) -> f64 {
    ((u - 1.0) / u).powi(n + 1) * u.powf(-r - 1.0)
}

/// Strict bound `∫_{(n+1+r)/r}^{(n+2+r)/r} g(u) du < r^r (n+1)^(n+1) / (n+r+1)^(n+r+2)`,
/// where the right side is `g` at the left end times the interval width `1/r`.
pub fn bound_222_check(r: f64, n: u64) -> Result<VerifyReport> {
    let r = shape(r)?;
    let nf = n as f64;
    let n_exp = i32::try_from(n).map_err(|_| domain("bound_222_check", "n too large"))?;
    let lo = (nf + 1.0 + r) / r;
    let hi = (nf + 2.0 + r) / r;
    let lhs = Integrator::with_tolerances(0.0, 1e-13)
        .integrate(|u| g(r, n_exp, u), lo, hi)?
        .value;
    let rhs = lemma22_closed_form(r, n)?;
    Ok(VerifyReport::less(lhs, rhs, 0.0))
}

/// Samples `g` at `points` equally spaced abscissae of `[(n+1+r)/r, (n+2+r)/r]` and checks that
/// every forward difference is negative. `lhs` is the largest difference, `rhs` is 0.
pub fn g_decrease_check(r: f64, n: u64, points: usize) -> Result<VerifyReport> {
    let r = shape(r)?;
    if points < 2 {
        return Err(domain(
            "g_decrease_check",
            "need at least two sample points",
        ));
    }
    let nf = n as f64;
    let n_exp = i32::try_from(n).map_err(|_| domain("g_decrease_check", "n too large"))?;
    let lo = (nf + 1.0 + r) / r;
    let hi = (nf + 2.0 + r) / r;
    let steps = (points - 1) as f64;
    let samples: Vec<f64> = (0..points)
        .map(|i| {
            let t = i as f64 / steps;
            g(r, n_exp, lo * (1.0 - t) + hi * t)
        })
        .collect();
    let worst = samples
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(VerifyReport::less(worst, 0.0, 0.0))
}

/// Coefficient identity
/// `Σ_{i=m}^{n} binom(i+r-1, i) binom(i, m) = binom(n, m) / ((r+m) B(n+1, r))` for `1 ≤ m ≤ n`.
pub fn coefficient_identity_check(r: f64, n: u64, m: u64) -> Result<VerifyReport> {
    let r = shape(r)?;
    if m < 1 || m > n {
        return Err(domain(
            "coefficient_identity_check",
            format!("need 1 <= m <= n, got m = {m}, n = {n}"),
        ));
    }
    let mut lhs = CompensatedSum::new();
    for i in m..=n {
        lhs.add(gen_binomial(i as f64 + r - 1.0, i)? * gen_binomial(i as f64, m)?);
    }
    let rhs = gen_binomial(n as f64, m)? / ((r + m as f64) * ln_beta(n as f64 + 1.0, r)?.exp());
    Ok(VerifyReport::equality(
        lhs.total(),
        rhs,
        COEFFICIENT_TOLERANCE,
    ))
}

/// Largest `n` for which [`binomial_chvatal_argmin`] uses exact integer arithmetic.
pub const EXACT_BINOMIAL_MAX_N: u64 = 40;

/// `q_m = P(B(n, m/n) ≤ m)` exactly.
pub fn binomial_mean_tail_exact(n: u64, m: u64) -> Result<BigRational> {
    if n == 0 || m > n {
        return Err(domain(
            "binomial_mean_tail_exact",
            format!("need 0 <= m <= n, n >= 1; got m = {m}, n = {n}"),
        ));
    }
    let numer = binomial_tail_numerator(n, m);
    let denom = BigUint::from(n).pow(n as u32);
    Ok(BigRational::new(numer.into(), denom.into()))
}

/// `n^n q_m = Σ_{j=0}^{m} C(n, j) m^j (n-m)^(n-j)`.
fn binomial_tail_numerator(n: u64, m: u64) -> BigUint {
    let mut total = BigUint::zero();
    let mut coeff = BigUint::one();
    let big_m = BigUint::from(m);
    let big_rest = BigUint::from(n - m);
    for j in 0..=m {
        if j > 0 {
            coeff = coeff * BigUint::from(n - j + 1) / BigUint::from(j);
        }
        total += &coeff * Pow::pow(&big_m, j as u32) * Pow::pow(&big_rest, (n - j) as u32);
    }
    total
}

fn binomial_mean_tail_float(n: u64, m: u64) -> f64 {
    if m == 0 || m == n {
        return 1.0;
    }
    let p = m as f64 / n as f64;
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    compensated_sum((0..=m).map(|j| {
        let jf = j as f64;
        (ln_gen_binomial_unchecked(n as f64, j) + jf * lp + (n - j) as f64 * lq).exp()
    }))
}

/// The values of `m ∈ {0, …, n}` minimizing `P(B(n, m/n) ≤ m)`, found by brute force.
///
/// Exact rational comparison for `n ≤ 40`, floating point above.
pub fn binomial_chvatal_argmin(n: u64) -> Result<BTreeSet<u64>> {
    if n < 2 {
        return Err(domain(
            "binomial_chvatal_argmin",
            format!("need n >= 2, got {n}"),
        ));
    }
    let mut best = BTreeSet::new();
    if n <= EXACT_BINOMIAL_MAX_N {
        // all q_m share the denominator n^n
        let mut min: Option<BigUint> = None;
        for m in 0..=n {
            let v = binomial_tail_numerator(n, m);
            match &min {
                Some(cur) if v > *cur => {}
                Some(cur) if v == *cur => {
                    best.insert(m);
                }
                _ => {
                    best.clear();
                    best.insert(m);
                    min = Some(v);
                }
            }
        }
    } else {
        let mut min = f64::INFINITY;
        for m in 0..=n {
            let v = binomial_mean_tail_float(n, m);
            if v < min {
                min = v;
                best.clear();
                best.insert(m);
            } else if v == min {
                best.insert(m);
            }
        }
    }
    Ok(best)
}

/// The integers in `{0, …, n}` closest to `2n/3`.
pub fn nearest_to_two_thirds(n: u64) -> BTreeSet<u64> {
    let dist = |m: u64| (3 * m).abs_diff(2 * n);
    let lo = 2 * n / 3;
    let best = dist(lo).min(dist(lo + 1));
    [lo, lo + 1]
        .into_iter()
        .filter(|&m| m <= n && dist(m) == best)
        .collect()
}

/// Minimum of the mean-tail probability over the given `p` values, with its location.
pub fn grid_minimum(r: f64, ps: &[f64]) -> Result<(f64, f64)> {
    let mut best = (f64::INFINITY, f64::NAN);
    for &p in ps {
        let v = mean_tail_prob(NBParams::new(r, p)?)?.value();
        if v < best.0 {
            best = (v, p);
        }
    }
    Ok(best)
}
