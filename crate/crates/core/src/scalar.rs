//! Exact rational scalars and their text form.
//!
//! A scalar is always stored reduced with a positive denominator; `Ratio`
//! maintains that invariant for us. The text form used across file formats
//! and CLI output is `p` for integers and `p/q` with `q > 0` otherwise.

use crate::Error;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

pub type Scalar = BigRational;

/// Scalar from a machine integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar `n/d`, reduced. Panics if `d == 0`; fixture and test helper.
pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn is_signed_digits(s: &str) -> bool {
    match s.strip_prefix('-') {
        Some(rest) => is_digits(rest),
        None => is_digits(s),
    }
}

/// Parses `p` or `p/q` with an optional leading `-` on `p` and `q > 0`.
///
/// No whitespace, no `+` sign, no sign on the denominator.
pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let bad = || Error::InvalidRational { text: text.to_string() };
    match text.split_once('/') {
        None => {
            if !is_signed_digits(text) {
                return Err(bad());
            }
            let n: BigInt = text.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((p, q)) => {
            if !is_signed_digits(p) || !is_digits(q) {
                return Err(bad());
            }
            let n: BigInt = p.parse().map_err(|_| bad())?;
            let d: BigInt = q.parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Canonical text form: `p` when the denominator is 1, else `p/q`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    #[test]
    fn parse_integers_and_fractions() {
        assert_eq!(parse_scalar("0").unwrap(), int(0));
        assert_eq!(parse_scalar("-7").unwrap(), int(-7));
        assert_eq!(parse_scalar("3/4").unwrap(), frac(3, 4));
        assert_eq!(parse_scalar("-3/4").unwrap(), frac(-3, 4));
        // reduction happens on construction
        assert_eq!(parse_scalar("6/4").unwrap(), frac(3, 2));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        for bad in ["", "1/0", "1/-2", "+3", "1 / 2", "a", "1/", "/2", "1//2", "1.5"] {
            assert!(parse_scalar(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(format_scalar(&int(5)), "5");
        assert_eq!(format_scalar(&int(-5)), "-5");
        assert_eq!(format_scalar(&frac(1, 2)), "1/2");
        assert_eq!(format_scalar(&frac(2, -4)), "-1/2");
        assert_eq!(format_scalar(&Scalar::zero()), "0");
    }

    #[test]
    fn round_trip() {
        for s in ["0", "1", "-1", "22/7", "-101/13"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
    }
}
