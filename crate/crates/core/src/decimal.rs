//! Decimal literals as exact scaled integers.
//!
//! A literal such as `-3.125` is held as the integer `-3125` together with
//! the number of fractional digits (3), meaning units of `10^-3`. An instance
//! rescales all of its literals to the largest digit count it contains.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported number of fractional digits (a `10^18` denominator).
pub const MAX_FRAC_DIGITS: u32 = 18;

/// An exact decimal value `value / 10^digits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaledInt {
    pub value: i128,
    pub digits: u32,
}

impl ScaledInt {
    pub const fn new(value: i128, digits: u32) -> Self {
        Self { value, digits }
    }

    /// Re-expresses the value in units of `10^-digits`.
    ///
    /// Only widening is supported; narrowing would lose digits.
    pub fn at_digits(self, digits: u32) -> Result<i128> {
        debug_assert!(digits >= self.digits);
        let factor = pow10(digits - self.digits)?;
        self.value.checked_mul(factor).ok_or(Error::Overflow)
    }
}

impl FromStr for ScaledInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

impl fmt::Display for ScaledInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scaled(self.value, self.digits))
    }
}

pub fn pow10(exp: u32) -> Result<i128> {
    10i128.checked_pow(exp).ok_or(Error::Overflow)
}

/// Parses `[+-]digits[.digits]` exactly.
pub fn parse_scalar(text: &str) -> Result<ScaledInt> {
    let malformed = || Error::MalformedLiteral(text.to_string());
    let (negative, body) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int_part.is_empty()
        || !all_digits(int_part)
        || !all_digits(frac_part)
        || (body.contains('.') && frac_part.is_empty())
    {
        return Err(malformed());
    }
    let digits = frac_part.len() as u32;
    if frac_part.len() > MAX_FRAC_DIGITS as usize {
        return Err(Error::TooManyFractionalDigits {
            literal: text.to_string(),
            max: MAX_FRAC_DIGITS,
        });
    }
    let mut value: i128 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(i128::from(b - b'0')))
            .ok_or(Error::Overflow)?;
    }
    if negative {
        value = -value;
    }
    Ok(ScaledInt { value, digits })
}

/// Canonical decimal rendering: no redundant sign, no trailing fractional zeros.
pub fn format_scaled(value: i128, digits: u32) -> String {
    let magnitude = value.unsigned_abs();
    let denom = 10u128.pow(digits);
    let int_part = magnitude / denom;
    let mut frac = magnitude % denom;
    let mut out = String::new();
    if value < 0 {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if frac != 0 {
        let mut width = digits as usize;
        while frac.is_multiple_of(10) {
            frac /= 10;
            width -= 1;
        }
        out.push('.');
        out.push_str(&format!("{frac:0width$}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_scalar("2.50").unwrap(), ScaledInt::new(250, 2));
        assert_eq!(parse_scalar("0").unwrap().value, 0);
        assert_eq!(parse_scalar("-3.125").unwrap(), ScaledInt::new(-3125, 3));
        assert_eq!(parse_scalar("+7").unwrap(), ScaledInt::new(7, 0));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "-", ".5", "5.", "1.2.3", "1e3", " 1", "0x10", "--1", "1,5"] {
            assert!(
                matches!(parse_scalar(bad), Err(Error::MalformedLiteral(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn digit_cap() {
        assert!(parse_scalar("0.000000000000000001").is_ok());
        assert!(matches!(
            parse_scalar("0.0000000000000000001"),
            Err(Error::TooManyFractionalDigits { .. })
        ));
    }

    #[test]
    fn huge_literal_overflows() {
        let text = "9".repeat(40);
        assert_eq!(parse_scalar(&text), Err(Error::Overflow));
    }

    #[test]
    fn rescale() {
        assert_eq!(ScaledInt::new(5, 1).at_digits(3).unwrap(), 500);
        assert_eq!(ScaledInt::new(i128::MAX / 2, 0).at_digits(1), Err(Error::Overflow));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_scaled(250, 2), "2.5");
        assert_eq!(format_scaled(-3125, 3), "-3.125");
        assert_eq!(format_scaled(-5, 2), "-0.05");
        assert_eq!(format_scaled(0, 4), "0");
        assert_eq!(format_scaled(1500, 3), "1.5");
        assert_eq!(format_scaled(15, 1), "1.5");
        assert_eq!(format_scaled(-40, 0), "-40");
    }

    fn canonical(text: &str) -> String {
        // Independent canonicalisation by string surgery.
        let (neg, body) = match text.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, text.strip_prefix('+').unwrap_or(text)),
        };
        let (i, f) = body.split_once('.').unwrap_or((body, ""));
        let i = i.trim_start_matches('0');
        let f = f.trim_end_matches('0');
        let i = if i.is_empty() { "0" } else { i };
        let mut s = String::new();
        if neg && (i != "0" || !f.is_empty()) {
            s.push('-');
        }
        s.push_str(i);
        if !f.is_empty() {
            s.push('.');
            s.push_str(f);
        }
        s
    }

    proptest! {
        #[test]
        fn round_trip(text in "[+-]?[0-9]{1,20}(\\.[0-9]{1,18})?") {
            let parsed = parse_scalar(&text).unwrap();
            let rendered = parsed.to_string();
            prop_assert_eq!(&rendered, &canonical(&text));
            let again = parse_scalar(&rendered).unwrap();
            let digits = parsed.digits.max(again.digits);
            prop_assert_eq!(parsed.at_digits(digits).unwrap(), again.at_digits(digits).unwrap());
        }
    }
}
