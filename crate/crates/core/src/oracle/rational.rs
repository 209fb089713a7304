use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{domain, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `P(NB(r, p) ≤ n) = Σ_{k=0}^{n} binom(k+r-1, k) p^r (1-p)^k` in exact arithmetic.
pub fn exact_cdf_rational(r: u32, p: &Rational, n: u64) -> Result<Rational> {
    if r == 0 {
        return Err(domain("exact_cdf_rational", "r must be >= 1"));
    }
    if !p.is_positive() || *p > Rational::one() {
        return Err(domain(
            "exact_cdf_rational",
            format!("p must lie in (0, 1], got {p}"),
        ));
    }
    let q = Rational::one() - p;
    let mut term = Pow::pow(p, r);
    let mut total = Rational::zero();
    for k in 0..=n {
        total += &term;
        if q.is_zero() {
            break;
        }
        let ratio = Rational::new(BigInt::from(k + r as u64), BigInt::from(k + 1));
        term = term * &q * ratio;
    }
    Ok(total)
}

/// Parses `a/b`, an integer, or a decimal with optional exponent (`0.125`, `-3e-2`) into an
/// exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || domain("parse_rational", format!("not a number: {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return Err(domain(
                "parse_rational",
                format!("zero denominator in {text:?}"),
            ));
        }
        return Ok(num / den);
    }

    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => {
            let exp: i32 = text[i + 1..].parse().map_err(|_| bad())?;
            (&text[..i], exp)
        }
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent as i64 - frac_part.len() as i64;
    if scale.unsigned_abs() > 4096 {
        return Err(domain(
            "parse_rational",
            format!("exponent out of range in {text:?}"),
        ));
    }
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= Pow::pow(&ten, scale as u32);
    } else {
        value /= Pow::pow(&ten, (-scale) as u32);
    }
    Ok(if negative { -value } else { value })
}
