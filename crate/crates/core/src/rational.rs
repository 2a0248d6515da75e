use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `p/q` for non-integers, `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p` or `p/q` where `q > 0` and `gcd(|p|, q) = 1`.
///
/// Non-reduced fractions are rejected rather than silently normalised.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| ParseError::new(1, format!("`{text}` is not a rational number")))?;
    let Some(den) = den else {
        return Ok(Rational::from_integer(p));
    };
    if den.starts_with(['+', '-']) {
        return Err(ParseError::new(
            1,
            format!("`{text}`: denominator must be a positive integer"),
        ));
    }
    let q: BigInt = den
        .parse()
        .map_err(|_| ParseError::new(1, format!("`{text}`: bad denominator")))?;
    if !q.is_positive() {
        return Err(ParseError::new(
            1,
            format!("`{text}`: denominator must be positive"),
        ));
    }
    if !p.abs().gcd(&q).is_one() {
        return Err(ParseError::new(
            1,
            format!("`{text}` is not in lowest terms"),
        ));
    }
    Ok(Rational::new_raw(p, q))
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
