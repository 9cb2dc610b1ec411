//! Exact rational helpers: parsing, formatting and conversion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"num/den"`, an integer, or a plain decimal such as `"0.48"` or
/// `"-1.5e-3"`. Decimals are converted exactly through a power-of-ten
/// denominator.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        let den: BigInt = d.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = all_digits.parse().map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Formats as `"num/den"`, or just `"num"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Huge numerators and denominators: scale both down first.
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

pub fn is_probability(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// Serde adapter storing a rational as a `"num/den"` string.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/5").unwrap(), ratio(3, 5));
        assert_eq!(parse_rational("6/10").unwrap(), ratio(3, 5));
        assert_eq!(parse_rational("0.48").unwrap(), ratio(12, 25));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("1e3").unwrap(), int(1000));
        assert_eq!(parse_rational("2.5e-1").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "abc", "1.2.3", ".", "1/x", "--1"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn formats() {
        assert_eq!(format_rational(&ratio(2, 4)), "1/2");
        assert_eq!(format_rational(&int(3)), "3");
        assert_eq!(format_rational(&ratio(-1, 3)), "-1/3");
    }

    #[test]
    fn huge_values_convert() {
        let big = BigRational::new(
            num_traits::pow(BigInt::from(10), 400) + 1,
            num_traits::pow(BigInt::from(10), 400) * 4,
        );
        assert!((to_f64(&big) - 0.25).abs() < 1e-12);
    }
}
