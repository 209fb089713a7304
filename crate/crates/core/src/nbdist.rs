//! Negative binomial and Pascal distributions and the mean-tail probability
//! `P(NB(r, p) ≤ r(1-p)/p)`.
//!
//! The mean-tail probability is a partial sum whose length depends on which half-open interval
//! `(r/(n+r+1), r/(n+r)]` contains `p`. The interval index is determined by exact rational
//! comparisons of the (binary) inputs, so boundary values such as `p = r/(n+r)` land in the
//! correct interval even where `r(1-p)/p` rounds across an integer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{domain, Result};
use crate::prob::{EvalPath, ProbValue};
use crate::specfun::{ln_gen_binomial_unchecked, reg_inc_beta};
use crate::sum::CompensatedSum;

/// Parameters of `NB(r, p)`: shape `r > 0` and success probability `0 < p ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NBParams {
    r: f64,
    p: f64,
}

impl NBParams {
    pub fn new(r: f64, p: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(domain(
                "NBParams",
                format!("r must be finite and > 0, got {r}"),
            ));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(domain("NBParams", format!("p must lie in (0, 1], got {p}")));
        }
        Ok(Self { r, p })
    }

    #[inline]
    pub fn r(&self) -> f64 {
        self.r
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Failure probability `1 - p`.
    #[inline]
    pub fn q(&self) -> f64 {
        1.0 - self.p
    }
}

/// The interval `(r/(n+r+1), r/(n+r)]` containing `p`, equivalently `n = ⌊r(1-p)/p⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalIndex {
    n: u64,
}

impl IntervalIndex {
    #[inline]
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Exact check that `r(1-p)/p` lies in `[n, n+1)`.
    pub fn is_consistent_with(&self, params: NBParams) -> bool {
        if params.p == 1.0 {
            return self.n == 0;
        }
        interval_contains(params, *self)
    }

    /// Bounds `(r/(n+r+1), r/(n+r)]` of the interval, rounded to the nearest double.
    pub fn bounds(&self, r: f64) -> (f64, f64) {
        let n = self.n as f64;
        (r / (n + r + 1.0), r / (n + r))
    }
}

/// Above this many terms, [`mean_tail_prob`] switches from the direct sum to the incomplete
/// Beta route.
pub const MAX_DIRECT_TERMS: u64 = 1_000_000;

/// Term count above which partial sums are accumulated largest-first.
const LARGEST_FIRST_THRESHOLD: u64 = 150;

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_FACTOR: f64 = 1e-250;
const LN_RESCALE_FACTOR: f64 = -575.646_273_248_511_4; // ln(1e-250)

/// `Σ_{k=0}^{n} binom(k+r-1, k) p^r q^k` for `p + q = 1`, both supplied so callers can pass an
/// exactly formed complement.
///
/// Terms come from the ratio `t_{k+1}/t_k = q (k+r)/(k+1)`, starting at `p^r`. The running
/// terms are rescaled when they grow large and the scale is carried in log form, so neither
/// a tiny leading term nor a huge mode overflows.
pub(crate) fn weighted_partial_sum(r: f64, p: f64, q: f64, n: u64) -> f64 {
    let mut term = p.powf(r);
    let mut ln_scale = 0.0;
    if term < 1e-280 {
        ln_scale = r * p.ln();
        term = 1.0;
    }
    if q == 0.0 {
        return term * ln_scale.exp();
    }

    let mut stored = if n > LARGEST_FIRST_THRESHOLD {
        Some(Vec::with_capacity(n as usize + 1))
    } else {
        None
    };
    let mut acc = CompensatedSum::new();

    for k in 0..=n {
        match stored.as_mut() {
            Some(terms) => terms.push(term),
            None => acc.add(term),
        }
        if k == n {
            break;
        }
        let kf = k as f64;
        term *= q * (kf + r) / (kf + 1.0);
        if term > RESCALE_ABOVE {
            term *= RESCALE_FACTOR;
            ln_scale -= LN_RESCALE_FACTOR;
            match stored.as_mut() {
                Some(terms) => terms.iter_mut().for_each(|t| *t *= RESCALE_FACTOR),
                None => acc.scale(RESCALE_FACTOR),
            }
        } else if term == 0.0 {
            // past the mode, every later term underflows too
            break;
        }
    }

    let total = match stored {
        Some(mut terms) => {
            terms.sort_unstable_by(|a, b| b.total_cmp(a));
            terms.into_iter().collect::<CompensatedSum>().total()
        }
        None => acc.total(),
    };
    if ln_scale == 0.0 {
        total
    } else {
        (total.ln() + ln_scale).exp()
    }
}

/// Probability mass `P(NB(r, p) = l) = binom(r+l-1, l) p^r q^l`.
pub fn nb_pmf(params: NBParams, l: u64) -> ProbValue {
    let NBParams { r, p } = params;
    let q = params.q();
    let value = if q == 0.0 {
        if l == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        // the masses are unimodal in l, so a final product above the floor never underflowed
        let lead = p.powf(r);
        let product = if lead > 1e-280 && l <= 10_000 {
            (1..=l).fold(lead, |v, j| {
                let j = j as f64;
                v * (q * (r + j - 1.0) / j)
            })
        } else {
            0.0
        };
        if product > 1e-290 && product.is_finite() {
            product
        } else {
            (ln_gen_binomial_unchecked(r + l as f64 - 1.0, l)
                + r * p.ln()
                + l as f64 * (-p).ln_1p())
            .exp()
        }
    };
    ProbValue::new(value, EvalPath::DirectSum)
}

/// `P(NB(r, p) ≤ n)` by compensated summation of the probability masses.
pub fn nb_cdf_sum(params: NBParams, n: u64) -> ProbValue {
    let value = weighted_partial_sum(params.r, params.p, params.q(), n);
    ProbValue::new(value, EvalPath::DirectSum)
}

/// `P(NB(r, p) ≤ n)` as the regularized incomplete Beta value `I_p(r, n + 1)`.
pub fn nb_cdf_beta(params: NBParams, n: u64) -> Result<ProbValue> {
    if params.p == 1.0 {
        return Ok(ProbValue::new(1.0, EvalPath::IncompleteBeta));
    }
    reg_inc_beta(params.p, params.r, n as f64 + 1.0)
}

/// Expectation `r(1-p)/p`.
pub fn nb_mean(params: NBParams) -> f64 {
    params.r * params.q() / params.p
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}

/// Whether `r/(n+r+1) < p ≤ r/(n+r)` holds exactly for the given rationals.
fn in_interval(r: &BigRational, p: &BigRational, n: u64) -> bool {
    // p > r/(n+r+1)  <=>  p(n+1) > r(1-p), and p ≤ r/(n+r)  <=>  p n ≤ r(1-p)
    let rq = r * (BigRational::one() - p);
    let n = BigRational::from_integer(BigInt::from(n));
    let lower_ok = p * (&n + BigRational::one()) > rq;
    let upper_ok = p * &n <= rq;
    lower_ok && upper_ok
}

fn exact_floor_mean(r: &BigRational, p: &BigRational) -> BigInt {
    let mean = r * (BigRational::one() - p) / p;
    mean.numer().div_floor(mean.denom())
}

/// Interval index of `p` for shape `r`.
///
/// Starts from one below the floating-point floor of `r(1-p)/p` and confirms membership by
/// exact comparison of the binary inputs, scanning at most three candidates.
pub fn mean_interval_index(params: NBParams) -> IntervalIndex {
    if params.p == 1.0 {
        return IntervalIndex { n: 0 };
    }
    let approx = (nb_mean(params)).floor();
    let start = if approx.is_finite() && approx >= 1.0 {
        (approx as u64).saturating_sub(1)
    } else {
        0
    };
    let r = exact(params.r);
    let p = exact(params.p);
    for n in start..start + 3 {
        if in_interval(&r, &p, n) {
            return IntervalIndex { n };
        }
    }
    // only reachable if the float quotient is off by more than one
    let n = exact_floor_mean(&r, &p).to_u64().unwrap_or(u64::MAX);
    IntervalIndex { n }
}

fn check_rational_params(r: &BigRational, p: &BigRational) -> Result<()> {
    if !r.is_positive() {
        return Err(domain("NBParams", format!("r must be > 0, got {r}")));
    }
    if !p.is_positive() || *p > BigRational::one() {
        return Err(domain("NBParams", format!("p must lie in (0, 1], got {p}")));
    }
    Ok(())
}

/// Interval index for exactly specified rational parameters, i.e. `⌊r(1-p)/p⌋` in exact
/// arithmetic. Use this when `p` is a boundary value such as `r/(n+r)` that has no exact
/// binary representation.
pub fn mean_interval_index_rational(r: &BigRational, p: &BigRational) -> Result<IntervalIndex> {
    check_rational_params(r, p)?;
    let n = exact_floor_mean(r, p)
        .to_u64()
        .ok_or_else(|| domain("mean_interval_index", "index exceeds u64"))?;
    Ok(IntervalIndex { n })
}

/// Whether `index` is the interval containing `p` for shape `r`, decided exactly.
pub fn interval_contains(params: NBParams, index: IntervalIndex) -> bool {
    in_interval(&exact(params.r), &exact(params.p), index.n)
}

/// `P(NB(r, p) ≤ n)` evaluated along the cheaper stable route for this `n`.
fn cdf_at_index(params: NBParams, n: u64) -> Result<ProbValue> {
    if params.p == 1.0 {
        return Ok(ProbValue::new(1.0, EvalPath::DirectSum));
    }
    if n <= MAX_DIRECT_TERMS {
        Ok(nb_cdf_sum(params, n))
    } else {
        nb_cdf_beta(params, n)
    }
}

/// Mean-tail probability `P(NB(r, p) ≤ r(1-p)/p)`.
///
/// Sums the masses up to the interval index directly; indices above [`MAX_DIRECT_TERMS`]
/// (very small `p`) use the incomplete Beta route instead.
pub fn mean_tail_prob(params: NBParams) -> Result<ProbValue> {
    cdf_at_index(params, mean_interval_index(params).n)
}

/// Mean-tail probability for exactly specified rational parameters. The interval index is
/// exact; the masses are evaluated at the nearest doubles.
pub fn mean_tail_prob_rational(r: &BigRational, p: &BigRational) -> Result<ProbValue> {
    let index = mean_interval_index_rational(r, p)?;
    let rf = r.to_f64().unwrap_or(f64::NAN);
    let pf = p.to_f64().unwrap_or(f64::NAN);
    let params = NBParams::new(rf, pf)?;
    cdf_at_index(params, index.n)
}

fn check_pascal(r: f64, p: f64) -> Result<u64> {
    if !(r.is_finite() && r >= 1.0 && r.fract() == 0.0) {
        return Err(domain(
            "pascal",
            format!("r must be a positive integer, got {r}"),
        ));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(domain("pascal", format!("p must lie in (0, 1], got {p}")));
    }
    Ok(r as u64)
}

/// `P(B*(r, p) = j) = binom(j-1, r-1) (1-p)^(j-r) p^r` for the number of trials `j ≥ r`
/// needed to collect `r` successes.
pub fn pascal_pmf(r: f64, p: f64, j: u64) -> Result<ProbValue> {
    let r = check_pascal(r, p)?;
    if j < r {
        return Err(domain(
            "pascal_pmf",
            format!("j must be >= r = {r}, got {j}"),
        ));
    }
    let failures = j - r;
    if p == 1.0 {
        let v = if failures == 0 { 1.0 } else { 0.0 };
        return Ok(ProbValue::new(v, EvalPath::DirectSum));
    }
    let q = 1.0 - p;

    let k = (r - 1).min(failures);
    let mut coeff = 1.0f64;
    for i in 1..=k {
        coeff = coeff * (j - 1 - k + i) as f64 / i as f64;
    }
    let direct = coeff * q.powi(failures as i32) * p.powi(r as i32);
    let value = if coeff.is_finite() && failures <= i32::MAX as u64 && direct > 1e-290 {
        direct
    } else {
        (ln_gen_binomial_unchecked((j - 1) as f64, r - 1)
            + failures as f64 * (-p).ln_1p()
            + r as f64 * p.ln())
        .exp()
    };
    Ok(ProbValue::new(value, EvalPath::DirectSum))
}

/// `P(B*(r, p) ≤ r/p)` summed over the Pascal masses `j = r, …, ⌊r/p⌋`.
///
/// The upper limit is an exact floor of `r/p` and independent of [`mean_interval_index`].
pub fn pascal_mean_tail(r: f64, p: f64) -> Result<ProbValue> {
    let ri = check_pascal(r, p)?;
    let ratio = BigRational::from_integer(BigInt::from(ri)) / exact(p);
    let j_max = ratio
        .floor()
        .to_integer()
        .to_u64()
        .ok_or_else(|| domain("pascal_mean_tail", "r/p exceeds u64"))?;
    if j_max - ri > MAX_DIRECT_TERMS {
        return Err(crate::Error::Unsupported(format!(
            "pascal_mean_tail would sum {} terms",
            j_max - ri + 1
        )));
    }
    let mut acc = CompensatedSum::new();
    for j in ri..=j_max {
        acc.add(pascal_pmf(r, p, j)?.value());
    }
    Ok(ProbValue::new(acc.total(), EvalPath::DirectSum))
}

/// `⌊r(1-p)/p⌋` computed in exact rational arithmetic from the binary inputs.
pub fn exact_mean_floor(params: NBParams) -> u64 {
    exact_floor_mean(&exact(params.r), &exact(params.p))
        .to_u64()
        .unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nb(r: f64, p: f64) -> NBParams {
        NBParams::new(r, p).unwrap()
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn params_validation() {
        assert!(NBParams::new(0.0, 0.5).is_err());
        assert!(NBParams::new(-1.0, 0.5).is_err());
        assert!(NBParams::new(f64::INFINITY, 0.5).is_err());
        assert!(NBParams::new(1.0, 0.0).is_err());
        assert!(NBParams::new(1.0, 1.0000001).is_err());
        assert!(NBParams::new(1.0, f64::NAN).is_err());
        assert_eq!(nb(2.0, 1.0).q(), 0.0);
    }

    #[test]
    fn pmf_examples() {
        for r in [0.3, 1.0, 12.5, 40.0] {
            assert_eq!(nb_pmf(nb(r, 1.0), 0).value(), 1.0);
            assert_eq!(nb_pmf(nb(r, 1.0), 3).value(), 0.0);
        }
        assert!((nb_pmf(nb(2.0, 0.5), 1).value() - 0.25).abs() <= 1e-16);
        assert!((nb_pmf(nb(1.0, 0.5), 3).value() - 0.0625).abs() <= 1e-17);
    }

    #[test]
    fn pmf_log_and_product_routes_agree() {
        // r + l straddles the switch at 30
        let params = nb(7.5, 0.35);
        let mut prev = nb_pmf(params, 0).value();
        for l in 1..60u64 {
            let v = nb_pmf(params, l).value();
            let ratio = v / prev;
            let want = 0.65 * (l as f64 - 1.0 + 7.5) / l as f64;
            assert!((ratio / want - 1.0).abs() <= 1e-12, "l={l}");
            prev = v;
        }
    }

    #[test]
    fn pmf_normalizes() {
        for &(r, p) in &[(0.3, 0.2), (1.0, 0.5), (2.7, 0.05), (10.0, 0.3)] {
            let params = nb(r, p);
            let total = nb_cdf_sum(params, 5000).value();
            assert!((total - 1.0).abs() <= 1e-12, "r={r} p={p}: {total}");
        }
    }

    #[test]
    fn cdf_sum_examples() {
        for n in [0, 1, 10, 1000] {
            assert_eq!(nb_cdf_sum(nb(3.3, 1.0), n).value(), 1.0);
        }
        assert!((nb_cdf_sum(nb(1.0, 0.5), 1).value() - 0.75).abs() <= 1e-16);
        assert!((nb_cdf_sum(nb(2.0, 0.5), 0).value() - 0.25).abs() <= 1e-16);
        assert_eq!(nb_cdf_sum(nb(2.0, 0.5), 0).path(), EvalPath::DirectSum);
    }

    #[test]
    fn cdf_beta_examples() {
        assert_eq!(nb_cdf_beta(nb(4.0, 1.0), 3).unwrap().value(), 1.0);
        let v = nb_cdf_beta(nb(1.0, 0.5), 1).unwrap();
        assert!((v.value() - 0.75).abs() <= 1e-15);
        assert_eq!(v.path(), EvalPath::IncompleteBeta);
        let params = nb(2.5, 0.3);
        let diff = nb_cdf_beta(params, 4).unwrap().value() - nb_cdf_sum(params, 4).value();
        assert!(diff.abs() <= 1e-12);
    }

    #[test]
    fn sum_and_beta_paths_agree() {
        for &r in &[0.3, 1.0, 2.0, 2.7, 5.0, 10.0] {
            for i in 1..=19 {
                let params = nb(r, i as f64 * 0.05);
                for n in 0..=100 {
                    let s = nb_cdf_sum(params, n).value();
                    let b = nb_cdf_beta(params, n).unwrap().value();
                    assert!(
                        (s - b).abs() <= 1e-12,
                        "r={r} p={} n={n}: {s} vs {b}",
                        params.p
                    );
                }
            }
        }
    }

    #[test]
    fn partial_sum_survives_underflowing_leading_term() {
        // p^r ~ 1e-600; the sum to the mean is still O(1).
        let params = nb(600.0, 0.1);
        let s = nb_cdf_sum(params, 5400).value();
        let b = nb_cdf_beta(params, 5400).unwrap().value();
        assert!(s > 0.4 && s < 0.6, "{s}");
        assert!((s - b).abs() <= 1e-10, "{s} vs {b}");
    }

    #[test]
    fn mean_examples() {
        assert_eq!(nb_mean(nb(3.0, 1.0)), 0.0);
        assert_eq!(nb_mean(nb(2.0, 0.5)), 2.0);
        assert!((nb_mean(nb(1.0, 0.4)) - 1.5).abs() <= 1e-15);
    }

    #[test]
    fn interval_index_examples() {
        assert_eq!(mean_interval_index(nb(1.0, 1.0)).n(), 0);
        assert_eq!(mean_interval_index(nb(2.0, 0.5)).n(), 2);
        assert_eq!(mean_interval_index(nb(1.0, 0.4)).n(), 1);
        // closed right endpoint: p = r/(r+1) belongs to n = 1
        assert_eq!(mean_interval_index(nb(3.0, 0.75)).n(), 1);
        assert_eq!(mean_interval_index(nb(1.0, 0.5)).n(), 1);
    }

    #[test]
    fn rational_interval_index_on_boundaries() {
        // 0.1 as a double is slightly above 1/10, so it sits in interval 8
        assert_eq!(mean_interval_index(nb(1.0, 0.1)).n(), 8);
        assert_eq!(
            mean_interval_index_rational(&rat(1, 1), &rat(1, 10))
                .unwrap()
                .n(),
            9
        );
        for r in 1..=7i64 {
            for n in 0..=40i64 {
                let idx = mean_interval_index_rational(&rat(r, 1), &rat(r, n + r)).unwrap();
                assert_eq!(idx.n(), n as u64);
            }
        }
        assert!(mean_interval_index_rational(&rat(0, 1), &rat(1, 2)).is_err());
        assert!(mean_interval_index_rational(&rat(1, 1), &rat(3, 2)).is_err());
    }

    #[test]
    fn interval_index_matches_exact_floor_on_dense_grid() {
        for &r in &[0.3, 0.5, 1.0, 2.0, 2.7, 3.0, 7.5, 10.0] {
            for i in 1..=20_000 {
                let params = nb(r, i as f64 / 20_000.0);
                let idx = mean_interval_index(params);
                assert!(idx.is_consistent_with(params), "r={r} p={}", params.p);
                assert_eq!(idx.n(), exact_mean_floor(params));
            }
        }
    }

    #[test]
    fn interval_index_near_boundaries() {
        for &r in &[0.3, 1.0, 2.7, 5.0] {
            for n in 0..200u64 {
                let edge = r / (n as f64 + r);
                for p in [
                    edge,
                    f64::from_bits(edge.to_bits() - 1),
                    f64::from_bits(edge.to_bits() + 1),
                ] {
                    if p > 1.0 {
                        continue;
                    }
                    let params = nb(r, p);
                    assert!(mean_interval_index(params).is_consistent_with(params));
                }
            }
        }
    }

    #[test]
    fn mean_tail_examples() {
        assert_eq!(mean_tail_prob(nb(2.2, 1.0)).unwrap().value(), 1.0);
        assert!((mean_tail_prob(nb(1.0, 0.5)).unwrap().value() - 0.75).abs() <= 1e-16);
        assert!((mean_tail_prob(nb(1.0, 0.6)).unwrap().value() - 0.6).abs() <= 1e-16);
    }

    #[test]
    fn mean_tail_rational_uses_exact_index() {
        // at p = 1/10 exactly the tail includes k = 9
        let exact_p = mean_tail_prob_rational(&rat(1, 1), &rat(1, 10))
            .unwrap()
            .value();
        let want = 1.0 - 0.9f64.powi(10);
        assert!((exact_p - want).abs() <= 1e-15, "{exact_p}");
        let float_p = mean_tail_prob(nb(1.0, 0.1)).unwrap().value();
        assert!((float_p - (1.0 - 0.9f64.powi(9))).abs() <= 1e-15);
    }

    #[test]
    fn tiny_p_switches_to_beta_route() {
        let params = nb(2.0, 1e-7);
        let v = mean_tail_prob(params).unwrap();
        assert_eq!(v.path(), EvalPath::IncompleteBeta);
        // approaches P(Gamma(2,1) <= 2) = 1 - 3e^-2 as p -> 0
        let limit = 1.0 - 3.0 * (-2.0f64).exp();
        assert!((v.value() - limit).abs() < 1e-5, "{}", v.value());
    }

    #[test]
    fn pascal_pmf_examples() {
        assert!((pascal_pmf(1.0, 0.5, 1).unwrap().value() - 0.5).abs() <= 1e-16);
        assert!((pascal_pmf(2.0, 0.5, 2).unwrap().value() - 0.25).abs() <= 1e-16);
        for r in 1..6 {
            assert_eq!(pascal_pmf(r as f64, 1.0, r).unwrap().value(), 1.0);
            assert_eq!(pascal_pmf(r as f64, 1.0, r + 1).unwrap().value(), 0.0);
        }
        assert!(pascal_pmf(2.0, 0.5, 1).is_err());
        assert!(pascal_pmf(2.5, 0.5, 3).is_err());
        assert!(pascal_pmf(0.0, 0.5, 3).is_err());
    }

    #[test]
    fn pascal_pmf_is_shifted_nb_pmf() {
        for r in [1u64, 2, 3, 5, 12] {
            for &p in &[0.1, 0.45, 0.9] {
                for l in 0..80u64 {
                    let a = pascal_pmf(r as f64, p, r + l).unwrap().value();
                    let b = nb_pmf(nb(r as f64, p), l).value();
                    assert!((a - b).abs() <= 1e-13 * b.max(1e-300), "r={r} p={p} l={l}");
                }
            }
        }
    }

    #[test]
    fn pascal_mean_tail_examples() {
        assert_eq!(pascal_mean_tail(1.0, 1.0).unwrap().value(), 1.0);
        for &(r, p) in &[(2.0, 0.5), (3.0, 0.75)] {
            let a = pascal_mean_tail(r, p).unwrap().value();
            let b = mean_tail_prob(nb(r, p)).unwrap().value();
            assert!((a - b).abs() <= 1e-15, "r={r} p={p}");
        }
    }

    #[test]
    fn mean_tail_strictly_above_infimum() {
        for &r in &[0.3f64, 0.5, 1.0, 2.0, 3.0, 7.5] {
            let inf = (r / (r + 1.0)).powf(r);
            for i in 1..=2000 {
                let params = nb(r, i as f64 / 2000.0);
                let v = mean_tail_prob(params).unwrap().value();
                assert!(v > inf, "r={r} p={}", params.p);
            }
        }
    }
}
