//! Exact rational helpers shared by the bound, lemma and certification code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("not a decimal number: {0:?}")]
pub struct ParseDecimalError(pub String);

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"-12.5"`, `"0.001"`, `"7"` or `"3/8"` exactly.
pub fn parse_decimal(s: &str) -> Result<Rational, ParseDecimalError> {
    let bad = || ParseDecimalError(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// `num/den`, or just `num` when the value is an integer.
pub fn to_exact_string(r: &Rational) -> String {
    r.to_string()
}

pub fn serialize<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_exact_string(r))
}

pub fn serialize_opt<S: serde::Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&to_exact_string(r)),
        None => s.serialize_none(),
    }
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    // Scale so both parts fit comfortably before converting.
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Generalised binomial `x(x-1)/2`.
pub fn binom2(x: &Rational) -> Rational {
    x * (x - int(1)) / int(2)
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

/// Whether `lhs <= sqrt(n)` for an exact rational `lhs` and integer `n >= 0`.
pub fn le_sqrt(lhs: &Rational, n: &BigInt) -> bool {
    if !lhs.is_positive() {
        return true;
    }
    // lhs = a/b > 0: a^2 <= n b^2.
    let a = lhs.numer();
    let b = lhs.denom();
    a * a <= n * b * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.001").unwrap(), ratio(1, 1000));
        assert_eq!(parse_decimal("-0.206475").unwrap(), ratio(-206475, 1_000_000));
        assert_eq!(parse_decimal("122").unwrap(), int(122));
        assert_eq!(parse_decimal(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_decimal("3/8").unwrap(), ratio(3, 8));
        assert!(parse_decimal("1e-3").is_err());
        assert!(parse_decimal("1/0").is_err());
        assert!(parse_decimal("-").is_err());
    }

    #[test]
    fn exact_strings() {
        assert_eq!(to_exact_string(&int(24)), "24");
        assert_eq!(to_exact_string(&ratio(-21, 2)), "-21/2");
    }

    #[test]
    fn generalised_binomial() {
        assert_eq!(binom2(&int(5)), int(10));
        assert_eq!(binom2(&ratio(1, 2)), ratio(-1, 8));
        assert_eq!(binom2(&int(-2)), int(3));
    }

    #[test]
    fn sqrt_comparisons() {
        assert_eq!(isqrt(&BigInt::from(80)), BigInt::from(8));
        assert!(le_sqrt(&int(9), &BigInt::from(81)));
        assert!(!le_sqrt(&ratio(91, 10), &BigInt::from(81)));
        assert!(le_sqrt(&int(-3), &BigInt::from(0)));
    }
}
