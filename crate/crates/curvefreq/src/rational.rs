//! Arbitrary-precision rational numbers.
//!
//! Every exact value in the crate is a [`Rational`]. The representation is
//! `num::BigRational`, which keeps values in lowest terms with a positive
//! denominator. Rationals serialize as the string `"p/q"`, or `"p"` when
//! `q = 1`, in every output format.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::str::FromStr;

pub use num::BigRational as Rational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// An integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for a non-negative machine exponent.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// `2^e` for a signed exponent; negative exponents give `1/2^|e|`.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::from(2).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Render as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("`{s}`: zero denominator")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Decimal rendering with `digits` significant digits, rounded half away
/// from zero. Computed by exact integer long division, never through `f64`.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();

    // Exponent e with 10^e <= |x| < 10^(e+1).
    let mut e: i64 = 0;
    let ten = BigInt::from(10);
    let mut lo = num.clone();
    let mut hi = den.clone();
    while lo < hi {
        lo *= &ten;
        e -= 1;
    }
    while lo >= &hi * &ten {
        hi *= &ten;
        e += 1;
    }

    // Scale so that the integer part has exactly `digits` digits, then round.
    let shift = digits as i64 - 1 - e;
    let (mut scaled_num, mut scaled_den) = (num, den);
    if shift >= 0 {
        scaled_num *= ten.pow(shift as u32);
    } else {
        scaled_den *= ten.pow((-shift) as u32);
    }
    let (q, r) = num::Integer::div_rem(&scaled_num, &scaled_den);
    let mut mantissa = q;
    if &r * 2 >= scaled_den {
        mantissa += 1;
    }
    let mut mstr = mantissa.to_string();
    let mut exp10 = e;
    if mstr.len() > digits {
        // Rounding carried over (e.g. 999.9 -> 1000).
        mstr.truncate(digits);
        exp10 += 1;
    }

    let sign = if neg { "-" } else { "" };
    // Plain notation for moderate exponents, scientific otherwise.
    if (-5..16).contains(&exp10) {
        if exp10 >= 0 {
            let ip = exp10 as usize + 1;
            if ip >= mstr.len() {
                let zeros = "0".repeat(ip - mstr.len());
                format!("{sign}{mstr}{zeros}")
            } else {
                format!("{sign}{}.{}", &mstr[..ip], &mstr[ip..])
            }
        } else {
            let zeros = "0".repeat((-exp10 - 1) as usize);
            format!("{sign}0.{zeros}{mstr}")
        }
    } else {
        let rest = mstr[1..].trim_end_matches('0');
        if rest.is_empty() {
            format!("{sign}{}e{exp10}", &mstr[..1])
        } else {
            format!("{sign}{}.{rest}e{exp10}", &mstr[..1])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_round_trip() {
        for (n, d) in [(1i64, 576i64), (991, 46080), (-7, 3), (5, 1), (0, 9)] {
            let x = rat(n, d);
            let s = format_rational(&x);
            assert_eq!(parse_rational(&s).unwrap(), x);
        }
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(1, 576)), "1/576");
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn decimal_rendering_is_exact_division() {
        assert_eq!(to_decimal(&rat(1, 2), 20), "0.50000000000000000000");
        assert_eq!(to_decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(to_decimal(&rat(2, 3), 5), "0.66667");
        assert_eq!(to_decimal(&rat(-1, 8), 4), "-0.1250");
        assert_eq!(to_decimal(&int(1152), 4), "1152");
        assert_eq!(to_decimal(&rat(999_9, 10), 3), "1000");
        assert_eq!(to_decimal(&int(0), 7), "0");
    }

    #[test]
    fn decimal_agrees_with_value_to_printed_precision() {
        // |printed - exact| <= 10^(e+1-digits) / 2 where e is the leading exponent.
        let x = rat(991, 46080);
        let s = to_decimal(&x, 20);
        let printed = parse_decimal(&s);
        let err = (printed - x).abs();
        assert!(err <= rat(1, 1) * pow2(0) * Rational::new(1.into(), BigInt::from(10).pow(21)));
    }

    fn parse_decimal(s: &str) -> Rational {
        let (int_part, frac) = s.split_once('.').unwrap_or((s, ""));
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let digits: BigInt = format!("{int_part}{frac}").parse().unwrap();
        Rational::new(digits, scale)
    }

    #[test]
    fn pow2_signed() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-2), rat(1, 4));
        assert_eq!(pow2(0), int(1));
    }
}
