//! Negative binomial variates as a Gamma–Poisson mixture: `X | G ~ Poisson(G)` with
//! `G ~ Gamma(shape r, scale (1-p)/p)`.

use super::rng::Xoshiro256StarStar;
use crate::error::{domain, Result};
use crate::nbdist::NBParams;
use crate::specfun::ln_gamma;

/// A seeded stream of `NB(r, p)` variates. Not shareable across threads; give each worker its
/// own stream with a distinct seed.
#[derive(Debug, Clone)]
pub struct SampleStream {
    params: NBParams,
    seed: u64,
    rng: Xoshiro256StarStar,
    spare_normal: Option<f64>,
}

impl SampleStream {
    pub fn new(r: f64, p: f64, seed: u64) -> Result<Self> {
        Ok(Self::from_params(NBParams::new(r, p)?, seed))
    }

    pub fn from_params(params: NBParams, seed: u64) -> Self {
        Self {
            params,
            seed,
            rng: Xoshiro256StarStar::seed_from_u64(seed),
            spare_normal: None,
        }
    }

    pub fn params(&self) -> NBParams {
        self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Marsaglia's polar method; the second variate of each pair is cached.
    fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.rng.next_f64() - 1.0;
            let v = 2.0 * self.rng.next_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * factor);
                return u * factor;
            }
        }
    }

    /// Unit-scale Gamma variate. Marsaglia–Tsang squeeze/rejection for `shape ≥ 1`;
    /// smaller shapes draw `Gamma(shape + 1) · U^(1/shape)`.
    fn standard_gamma(&mut self, shape: f64) -> f64 {
        if shape < 1.0 {
            let boost = self.rng.next_open01().powf(1.0 / shape);
            return self.standard_gamma(shape + 1.0) * boost;
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.standard_normal();
            let v = 1.0 + c * x;
            if v <= 0.0 {
                continue;
            }
            let v = v * v * v;
            let u = self.rng.next_open01();
            let x2 = x * x;
            if u < 1.0 - 0.0331 * x2 * x2 {
                return d * v;
            }
            if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
                return d * v;
            }
        }
    }

    /// Poisson variate: sequential inversion below mean 10, Hörmann's transformed rejection
    /// with squeeze (PTRS) above.
    fn poisson(&mut self, mean: f64) -> u64 {
        if mean <= 0.0 {
            return 0;
        }
        if mean < 10.0 {
            let u = self.rng.next_f64();
            let mut mass = (-mean).exp();
            let mut cdf = mass;
            let mut k = 0u64;
            while u > cdf && mass > 0.0 {
                k += 1;
                mass *= mean / k as f64;
                cdf += mass;
            }
            return k;
        }

        let smu = mean.sqrt();
        let b = 0.931 + 2.53 * smu;
        let a = -0.059 + 0.024_83 * b;
        let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        let vr = 0.9277 - 3.6224 / (b - 2.0);
        let ln_mean = mean.ln();
        loop {
            let u = self.rng.next_f64() - 0.5;
            let v = self.rng.next_open01();
            let us = 0.5 - u.abs();
            let k = ((2.0 * a / us + b) * u + mean + 0.43).floor();
            if us >= 0.07 && v <= vr {
                return k as u64;
            }
            if k < 0.0 || (us < 0.013 && v > us) {
                continue;
            }
            let lhs = v.ln() + inv_alpha.ln() - (a / (us * us) + b).ln();
            let rhs = -mean + k * ln_mean - ln_gamma(k + 1.0);
            if lhs <= rhs {
                return k as u64;
            }
        }
    }

    /// Draws one variate and advances the stream.
    pub fn next_variate(&mut self) -> u64 {
        let p = self.params.p();
        if p == 1.0 {
            return 0;
        }
        let scale = (1.0 - p) / p;
        let g = self.standard_gamma(self.params.r()) * scale;
        self.poisson(g)
    }
}

impl Iterator for SampleStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.next_variate())
    }
}

/// One `NB(r, p)` variate from `stream`.
pub fn nb_sample(stream: &mut SampleStream) -> u64 {
    stream.next_variate()
}

/// Empirical `P(X ≤ n)` with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

/// Fraction of `draws` seeded variates that are `≤ n`.
pub fn mc_cdf_estimate(r: f64, p: f64, n: u64, draws: u64, seed: u64) -> Result<McEstimate> {
    if draws == 0 {
        return Err(domain("mc_cdf_estimate", "draws must be >= 1"));
    }
    let stream = SampleStream::new(r, p, seed)?;
    let hits = stream.take(draws as usize).filter(|&x| x <= n).count();
    let estimate = hits as f64 / draws as f64;
    Ok(McEstimate {
        estimate,
        std_error: (estimate * (1.0 - estimate) / draws as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nbdist::{mean_interval_index, mean_tail_prob, nb_cdf_sum};

    fn mean_and_var(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
        (m, v)
    }

    #[test]
    fn degenerate_p_gives_zero() {
        let mut s = SampleStream::new(3.7, 1.0, 1).unwrap();
        assert!((0..1000).all(|_| nb_sample(&mut s) == 0));
        let est = mc_cdf_estimate(2.0, 1.0, 0, 500, 3).unwrap();
        assert_eq!((est.estimate, est.std_error), (1.0, 0.0));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a: Vec<u64> = SampleStream::new(2.5, 0.3, 42)
            .unwrap()
            .take(2000)
            .collect();
        let b: Vec<u64> = SampleStream::new(2.5, 0.3, 42)
            .unwrap()
            .take(2000)
            .collect();
        let c: Vec<u64> = SampleStream::new(2.5, 0.3, 43)
            .unwrap()
            .take(2000)
            .collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn gamma_moments() {
        for &shape in &[0.3, 0.9, 1.0, 2.5, 30.0] {
            let mut s = SampleStream::new(1.0, 0.5, 11).unwrap();
            let xs: Vec<f64> = (0..200_000).map(|_| s.standard_gamma(shape)).collect();
            let (m, v) = mean_and_var(&xs);
            let se = (shape / xs.len() as f64).sqrt();
            assert!((m - shape).abs() < 5.0 * se, "shape={shape}: mean {m}");
            assert!((v / shape - 1.0).abs() < 0.05, "shape={shape}: var {v}");
        }
    }

    #[test]
    fn poisson_moments_both_regimes() {
        for &mean in &[0.2, 3.0, 9.9, 10.0, 57.0, 1e4] {
            let mut s = SampleStream::new(1.0, 0.5, 5).unwrap();
            let xs: Vec<f64> = (0..200_000).map(|_| s.poisson(mean) as f64).collect();
            let (m, v) = mean_and_var(&xs);
            let se = (mean / xs.len() as f64).sqrt();
            assert!((m - mean).abs() < 5.0 * se, "mean={mean}: {m}");
            assert!((v / mean - 1.0).abs() < 0.03, "mean={mean}: var {v}");
        }
    }

    #[test]
    fn poisson_pmf_at_small_counts() {
        // PTRS regime: compare P(X = k) near the mode against the exact mass
        let mean = 12.0;
        let mut s = SampleStream::new(1.0, 0.5, 8).unwrap();
        let draws = 400_000;
        let mut counts = [0u32; 40];
        for _ in 0..draws {
            let k = s.poisson(mean) as usize;
            if k < counts.len() {
                counts[k] += 1;
            }
        }
        for (k, &c) in counts.iter().enumerate().take(25).skip(3) {
            let pk = (-mean + k as f64 * mean.ln() - ln_gamma(k as f64 + 1.0)).exp();
            let se = (pk * (1.0 - pk) / draws as f64).sqrt();
            let freq = c as f64 / draws as f64;
            assert!((freq - pk).abs() < 5.0 * se, "k={k}: {freq} vs {pk}");
        }
    }

    #[test]
    fn sample_mean_r1_half() {
        let draws = 1_000_000;
        let xs: Vec<f64> = SampleStream::new(1.0, 0.5, 2024)
            .unwrap()
            .take(draws)
            .map(|x| x as f64)
            .collect();
        let (m, v) = mean_and_var(&xs);
        // variance of NB(1, 1/2) is rq/p^2 = 2
        let se = (2.0 / draws as f64).sqrt();
        assert!((m - 1.0).abs() < 4.0 * se, "{m}");
        assert!((v - 2.0).abs() < 0.05, "{v}");
    }

    #[test]
    fn empirical_mean_tail() {
        for &(r, p, seed) in &[(2.5, 0.3, 1u64), (0.4, 0.2, 2)] {
            let params = NBParams::new(r, p).unwrap();
            let n = mean_interval_index(params).n();
            let est = mc_cdf_estimate(r, p, n, 200_000, seed).unwrap();
            let exact = mean_tail_prob(params).unwrap().value();
            assert!(
                (est.estimate - exact).abs() < 4.0 * est.std_error,
                "r={r} p={p}"
            );
        }
    }

    #[test]
    fn coverage_over_seeded_trials() {
        let params = NBParams::new(3.0, 0.75).unwrap();
        let exact = nb_cdf_sum(params, 1).value();
        let covered = (0..100)
            .filter(|&seed| {
                let est = mc_cdf_estimate(3.0, 0.75, 1, 10_000, 1000 + seed).unwrap();
                (est.estimate - exact).abs() <= 4.0 * est.std_error
            })
            .count();
        assert!(covered >= 99, "{covered}");
    }

    #[test]
    fn zero_draws_is_an_error() {
        assert!(mc_cdf_estimate(1.0, 0.5, 1, 0, 1).is_err());
        assert!(SampleStream::new(0.0, 0.5, 1).is_err());
    }
}
