//! Exact rational arithmetic helpers shared across the crate.
//!
//! All supports, memberships, and thresholds are `BigRational`s so that
//! frequent/infrequent decisions never depend on float rounding. The
//! truncating ("compat") mode works on multiples of 1/100 produced by
//! [`truncate_centi`].

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberError {
    #[error("InvalidNumber: `{0}` is not an integer, decimal, or p/q rational")]
    Invalid(String),
    #[error("InvalidNumber: `{0}` has a zero denominator")]
    ZeroDenominator(String),
}

/// Shorthand for small rational constants.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parse `"11"`, `"0.36"`, or `"9/25"` into an exact rational.
pub fn parse_number(text: &str) -> Result<Rational, NumberError> {
    let trimmed = text.trim();
    let invalid = || NumberError::Invalid(text.to_string());
    let (negative, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, trimmed.strip_prefix('+').unwrap_or(trimmed)),
    };
    if body.is_empty() {
        return Err(invalid());
    }
    let magnitude = if let Some((numer, denom)) = body.split_once('/') {
        let numer = BigInt::from_str(numer.trim()).map_err(|_| invalid())?;
        let denom = BigInt::from_str(denom.trim()).map_err(|_| invalid())?;
        if denom.is_zero() {
            return Err(NumberError::ZeroDenominator(text.to_string()));
        }
        Rational::new(numer, denom)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let whole = if whole.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| invalid())?
        };
        if whole.is_negative() {
            return Err(invalid());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = BigInt::from_str(frac).map_err(|_| invalid())?;
        Rational::new(whole * &scale + frac, scale)
    } else {
        let whole = BigInt::from_str(body).map_err(|_| invalid())?;
        if whole.is_negative() {
            return Err(invalid());
        }
        Rational::from_integer(whole)
    };
    Ok(if negative { -magnitude } else { magnitude })
}

/// Truncate toward zero at two decimal places: 1/6 becomes 16/100.
pub fn truncate_centi(value: &Rational) -> Rational {
    let hundred = BigInt::from(100);
    let scaled = value * Rational::from_integer(hundred.clone());
    Rational::new(scaled.trunc().to_integer(), hundred)
}

/// Render a multiple of 1/100 with exactly two fractional digits.
///
/// Values produced by [`truncate_centi`] (and sums/quotients of them that
/// were re-truncated) always satisfy the multiple-of-1/100 precondition.
pub fn format_centi(value: &Rational) -> String {
    let scaled = value * Rational::from_integer(BigInt::from(100));
    debug_assert!(scaled.is_integer(), "not a multiple of 1/100: {value}");
    let hundredths = scaled.to_integer();
    let whole = &hundredths / BigInt::from(100);
    let frac = (&hundredths % BigInt::from(100))
        .abs()
        .to_u8()
        .expect("|frac| < 100");
    let sign = if hundredths.is_negative() && whole.is_zero() {
        "-"
    } else {
        ""
    };
    format!("{sign}{whole}.{frac:02}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_decimal_and_fraction() {
        assert_eq!(parse_number("11").unwrap(), ratio(11, 1));
        assert_eq!(parse_number("0.36").unwrap(), ratio(9, 25));
        assert_eq!(parse_number(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_number("9/25").unwrap(), ratio(9, 25));
        assert_eq!(parse_number("-0.25").unwrap(), ratio(-1, 4));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1.2.3", "0.", "x", "1/0", "1/", "--2"] {
            assert!(parse_number(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn truncates_toward_zero() {
        assert_eq!(truncate_centi(&ratio(1, 6)), ratio(16, 100));
        assert_eq!(truncate_centi(&ratio(2, 3)), ratio(66, 100));
        assert_eq!(truncate_centi(&ratio(3, 4)), ratio(75, 100));
        assert_eq!(truncate_centi(&ratio(1, 5)), ratio(20, 100));
    }

    #[test]
    fn formats_two_digits() {
        assert_eq!(format_centi(&ratio(289, 100)), "2.89");
        assert_eq!(format_centi(&ratio(1, 5)), "0.20");
        assert_eq!(format_centi(&ratio(11, 1)), "11.00");
        assert_eq!(format_centi(&ratio(0, 1)), "0.00");
    }
}
