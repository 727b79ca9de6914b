//! Exact rational helpers: parsing, canonical formatting, decimal rounding.
//!
//! Everything here is exact; no float passes through any of these paths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(big(n), big(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(big(n))
}

pub fn bigint_pow(base: &BigInt, exp: usize) -> BigInt {
    let mut acc = BigInt::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

fn pow10(n: usize) -> BigInt {
    bigint_pow(&big(10), n)
}

/// Canonical `p/q` form with the denominator always present and positive.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, plain decimals (`1.25`), and scientific notation (`1e-12`).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }

    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };

    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    if !int_digits.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || (int_digits.is_empty() && frac_part.is_empty())
    {
        return Err(Error::Parse(format!("bad rational literal {s:?}")));
    }
    let digits = format!("{int_digits}{frac_part}");
    let mut numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad digits in {s:?}")))?
    };
    if negative {
        numer = -numer;
    }
    let scale = frac_part.len() as i64 - exp;
    let value = if scale >= 0 {
        BigRational::new(numer, pow10(scale as usize))
    } else {
        BigRational::from_integer(numer * pow10((-scale) as usize))
    };
    Ok(value)
}

/// Rounds half-away-from-zero to `places` decimals, exactly, and renders the
/// result with exactly `places` digits after the point.
pub fn round_decimal(r: &BigRational, places: usize) -> String {
    let negative = r.is_negative();
    let abs = r.abs();
    let scaled = abs * BigRational::from_integer(pow10(places));
    // floor(x + 1/2) implements half-away-from-zero on the absolute value
    let shifted = scaled + rat(1, 2);
    let units = shifted.numer().div_floor(shifted.denom());
    let digits = units.to_string();
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let sign = if negative && digits.chars().any(|c| c != '0') {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rational("1e-12").unwrap(), rat(1, 1_000_000_000_000));
        assert_eq!(parse_rational("2.5e2").unwrap(), rat_int(250));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn rounding_half_away() {
        assert_eq!(round_decimal(&rat(5, 2), 0), "3");
        assert_eq!(round_decimal(&rat(-5, 2), 0), "-3");
        assert_eq!(round_decimal(&rat(183928675, 100000000), 5), "1.83929");
        assert_eq!(round_decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(round_decimal(&rat(2, 3), 5), "0.66667");
        assert_eq!(round_decimal(&rat(123455, 100000), 4), "1.2346");
    }

    #[test]
    fn format_canonical() {
        assert_eq!(format_rational(&rat(3, 1)), "3/1");
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
    }
}
