use clap::{Args, Parser, Subcommand, ValueEnum};
use nbtail_core::oracle::parse_rational;
use nbtail_core::Rational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::record::Format;

#[derive(Debug, Parser)]
#[command(
    name = "nbtail",
    version,
    about = "Negative binomial mean-tail probabilities and their infimum"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// P(X = n) for X ~ NB(r, p)
    Pmf,
    /// P(X <= n)
    Cdf,
    /// P(X <= r(1-p)/p) with its interval index
    MeanTail,
    /// Infimum over p of the mean-tail probability (over one interval with --n)
    Inf,
    /// The per-interval infimum sequence a_r(0..=n-max) in sum and integral form
    ASeq,
    /// Run a check suite; exits 1 if any check fails
    Verify,
    /// Mean-tail probability over a p grid, with a per-r summary row
    Sweep,
    /// Seeded NB(r, p) variates, or a Monte Carlo CDF estimate at --n
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma21,
    Lemma22,
    Coeff,
    Monotone,
    Bound222,
    ChvatalBinomial,
    All,
}

#[derive(Debug, Args)]
pub struct Flags {
    /// Shape values, comma separated; decimals or a/b
    #[arg(long, global = true, value_delimiter = ',')]
    pub r: Vec<String>,
    /// Success probabilities in (0, 1], comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    pub p: Vec<String>,
    /// Counts, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    pub n: Vec<String>,
    /// Largest n for a-seq and the verify suites
    #[arg(long, global = true)]
    pub n_max: Option<String>,
    /// Inclusive p grid start:stop:count
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// Relative tolerance for the equality checks
    #[arg(long, global = true, default_value = "1e-10")]
    pub tol: String,
    /// Sampler seed [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<String>,
    /// Number of variates (10 when listing, 100000 for an estimate)
    #[arg(long, global = true)]
    pub draws: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value = "all")]
    pub suite: Suite,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub type Usage<T> = Result<T, UsageError>;

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// A numeric flag value: the exact rational it denotes and its nearest double.
#[derive(Debug, Clone)]
pub struct Num {
    pub exact: Rational,
    pub value: f64,
}

impl Num {
    pub fn from_exact(exact: Rational) -> Self {
        let value = exact.to_f64().unwrap_or(f64::NAN);
        Self { exact, value }
    }
}

pub fn parse_num(flag: &str, text: &str) -> Usage<Num> {
    let exact =
        parse_rational(text).map_err(|_| usage(format!("--{flag}: not a number: {text:?}")))?;
    let num = Num::from_exact(exact);
    if !num.value.is_finite() {
        return Err(usage(format!("--{flag}: out of range: {text:?}")));
    }
    Ok(num)
}

pub fn parse_shape(text: &str) -> Usage<Num> {
    let num = parse_num("r", text)?;
    if !num.exact.is_positive() || num.value == 0.0 {
        return Err(usage(format!("--r must be > 0, got {text}")));
    }
    Ok(num)
}

pub fn parse_prob(text: &str) -> Usage<Num> {
    let num = parse_num("p", text)?;
    if !num.exact.is_positive() || num.exact > Rational::one() || num.value == 0.0 {
        return Err(usage(format!("--p must lie in (0, 1], got {text}")));
    }
    Ok(num)
}

pub fn parse_count(flag: &str, text: &str) -> Usage<u64> {
    text.trim()
        .parse()
        .map_err(|_| usage(format!("--{flag} must be a natural number, got {text:?}")))
}

/// `start:stop:count`, inclusive of both ends. A zero start is moved to the grid step.
pub fn parse_grid(text: &str) -> Usage<Vec<Num>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(usage(format!(
            "--grid expects start:stop:count, got {text:?}"
        )));
    };
    let start = parse_num("grid", start)?.exact;
    let stop = parse_num("grid", stop)?.exact;
    let count = parse_count("grid", count)?;
    if count < 2 {
        return Err(usage(format!("--grid needs count >= 2, got {count}")));
    }
    if start < Rational::zero() || stop > Rational::one() || start > stop {
        return Err(usage(format!(
            "--grid needs 0 <= start <= stop <= 1, got {text:?}"
        )));
    }
    let step = (&stop - &start) / Rational::from_integer((count - 1).into());
    let mut points = Vec::with_capacity(count as usize);
    for i in 0..count {
        let mut p = &start + &step * Rational::from_integer(i.into());
        if p.is_zero() {
            if step.is_zero() {
                return Err(usage("--grid: every point is p = 0"));
            }
            eprintln!("warning: p = 0 is outside (0, 1]; using the grid step {step} instead");
            p = step.clone();
        }
        points.push(Num::from_exact(p));
    }
    Ok(points)
}

impl Flags {
    pub fn shapes(&self) -> Usage<Vec<Num>> {
        self.r.iter().map(|t| parse_shape(t)).collect()
    }

    pub fn shapes_or(&self, defaults: &[f64]) -> Usage<Vec<Num>> {
        if self.r.is_empty() {
            Ok(defaults
                .iter()
                .map(|&r| Num::from_exact(Rational::from_float(r).expect("finite default")))
                .collect())
        } else {
            self.shapes()
        }
    }

    pub fn require_shapes(&self) -> Usage<Vec<Num>> {
        if self.r.is_empty() {
            return Err(usage("--r is required"));
        }
        self.shapes()
    }

    /// `--p` values followed by `--grid` points.
    pub fn probs(&self) -> Usage<Vec<Num>> {
        let mut ps: Vec<Num> = self.p.iter().map(|t| parse_prob(t)).collect::<Usage<_>>()?;
        if let Some(grid) = &self.grid {
            ps.extend(parse_grid(grid)?);
        }
        Ok(ps)
    }

    pub fn require_probs(&self) -> Usage<Vec<Num>> {
        let ps = self.probs()?;
        if ps.is_empty() {
            return Err(usage("--p or --grid is required"));
        }
        Ok(ps)
    }

    pub fn counts(&self) -> Usage<Vec<u64>> {
        self.n.iter().map(|t| parse_count("n", t)).collect()
    }

    pub fn require_counts(&self) -> Usage<Vec<u64>> {
        if self.n.is_empty() {
            return Err(usage("--n is required"));
        }
        self.counts()
    }

    pub fn n_max_or(&self, default: u64) -> Usage<u64> {
        self.n_max
            .as_deref()
            .map_or(Ok(default), |t| parse_count("n-max", t))
    }

    pub fn tol(&self) -> Usage<f64> {
        let tol = parse_num("tol", &self.tol)?.value;
        if tol > 0.0 {
            Ok(tol)
        } else {
            Err(usage(format!("--tol must be > 0, got {}", self.tol)))
        }
    }

    pub fn seed(&self) -> Usage<u64> {
        self.seed
            .as_deref()
            .map_or(Ok(0), |t| parse_count("seed", t))
    }

    pub fn draws_or(&self, default: u64) -> Usage<u64> {
        let draws = self
            .draws
            .as_deref()
            .map_or(Ok(default), |t| parse_count("draws", t))?;
        if draws == 0 {
            return Err(usage("--draws must be >= 1"));
        }
        Ok(draws)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive_and_exact() {
        let g = parse_grid("0.25:0.75:3").unwrap();
        let v: Vec<f64> = g.iter().map(|n| n.value).collect();
        assert_eq!(v, vec![0.25, 0.5, 0.75]);
        let g = parse_grid("0:1:11").unwrap();
        assert_eq!(g[0].exact, parse_rational("1/10").unwrap());
        assert_eq!(g[10].value, 1.0);
    }

    #[test]
    fn bad_grids() {
        for bad in ["0:1", "0:1:1", "0.5:0.2:3", "0:2:3", "a:1:3", "0:0:2"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn value_checks() {
        assert!(parse_shape("0").is_err());
        assert!(parse_shape("-1").is_err());
        assert!(parse_shape("1e-400").is_err());
        assert_eq!(parse_shape("3/2").unwrap().value, 1.5);
        assert!(parse_prob("1.5").is_err());
        assert!(parse_prob("0").is_err());
        assert_eq!(parse_prob("1").unwrap().value, 1.0);
        assert!(parse_count("n", "-3").is_err());
        assert!(parse_count("n", "2.5").is_err());
    }
}
