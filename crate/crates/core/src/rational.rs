//! Exact rational plumbing shared by rules, audits, and the CLI.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

/// Exact probabilities and constants everywhere in this crate.
pub type Rational = BigRational;

/// `2^exp` as an exact rational; `exp` may be negative.
pub fn pow2(exp: i64) -> Rational {
    if exp >= 0 {
        Rational::from_integer(BigInt::one() << exp as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-exp) as usize)
    }
}

/// Parses `"num"` or `"num/den"` with an optional leading minus on the
/// numerator. The denominator must be positive.
pub fn parse_ratio(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("expected NUM or NUM/DEN, found `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den <= BigInt::zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Nearest `f64`, for display next to the exact value.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `"num/den"` in lowest terms, or just `"num"` for integers.
pub fn format_ratio(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow2_covers_both_signs() {
        assert_eq!(pow2(0), Rational::one());
        assert_eq!(pow2(3), Rational::from_integer(8.into()));
        assert_eq!(pow2(-2), Rational::new(1.into(), 4.into()));
    }

    #[test]
    fn ratio_strings_round_trip() {
        for s in ["0", "7", "-3", "7/2", "-11/4", "1000000000000000000000/7"] {
            let r = parse_ratio(s).unwrap();
            assert_eq!(format_ratio(&r), s);
        }
        assert_eq!(parse_ratio("14/4").unwrap(), parse_ratio("7/2").unwrap());
        for s in ["", "x", "1/0", "1/-2", "1/2/3", "0.5"] {
            assert!(parse_ratio(s).is_err(), "should reject `{s}`");
        }
    }

    #[test]
    fn float_rendering_is_close() {
        let r = parse_ratio("7/2").unwrap();
        assert!((to_f64(&r) - 3.5).abs() < 1e-12);
    }
}
