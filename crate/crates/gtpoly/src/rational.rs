//! Exact rational scalars.
//!
//! Every pattern entry in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. Arithmetic is
//! exact; nothing in the crate ever rounds. The text format is `p/q` with
//! integers printed without the `/1`.

use crate::error::{Error, Result};
use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Formats in the canonical `p/q` form, or plain `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the canonical `p/q` form (or a plain integer).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let mk_err = || Error::malformed(format!("cannot parse rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| mk_err())?;
        let q: BigInt = q.trim().parse().map_err(|_| mk_err())?;
        if q.is_zero() {
            return Err(Error::malformed(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| mk_err())?;
        Ok(BigRational::from_integer(p))
    }
}

/// Greatest rational `g > 0` such that `x / g` is an integer for every `x`
/// in the (not all zero) input list: `gcd(numerators) / lcm(denominators)`.
pub fn rational_gcd<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        num_gcd = num::integer::gcd(num_gcd, v.numer().abs());
        den_lcm = num::integer::lcm(den_lcm, v.denom().clone());
    }
    if num_gcd.is_zero() {
        None
    } else {
        Some(BigRational::new(num_gcd, den_lcm))
    }
}

/// Serialize for the JSON wire format: integers become JSON numbers when they
/// fit in an `i64`, everything else becomes a `p/q` string.
pub fn rational_to_json(x: &Rational) -> serde_json::Value {
    if is_integer(x) {
        let (sign, digits) = x.numer().to_u64_digits();
        let small = match (sign, digits.len()) {
            (Sign::NoSign, _) => Some(0i64),
            (Sign::Plus, 1) if digits[0] <= i64::MAX as u64 => Some(digits[0] as i64),
            (Sign::Minus, 1) if digits[0] <= i64::MAX as u64 => Some(-(digits[0] as i64)),
            _ => None,
        };
        if let Some(n) = small {
            return serde_json::Value::from(n);
        }
    }
    serde_json::Value::String(format_rational(x))
}

pub fn rational_from_json(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat_int(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigRational::from_integer(BigInt::from(u)))
            } else {
                Err(Error::malformed(format!(
                    "non-integer JSON number {n} (use \"p/q\" strings for fractions)"
                )))
            }
        }
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::malformed(format!(
            "expected integer or \"p/q\" string, got {other}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "11/2", "-5/4"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(format_rational(&x), s);
        }
        // canonical reduction and sign normalization
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("1/-2").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn gcd_of_rationals() {
        let vals = [rat(5, 2), rat_int(4), rat(3, 2)];
        assert_eq!(rational_gcd(vals.iter()), Some(rat(1, 2)));
        assert_eq!(rational_gcd([rat_int(0)].iter()), None);
        assert_eq!(
            rational_gcd([rat(2, 3), rat(4, 3)].iter()),
            Some(rat(2, 3))
        );
    }

    #[test]
    fn json_encoding_uses_numbers_for_integers() {
        assert_eq!(rational_to_json(&rat_int(4)), serde_json::json!(4));
        assert_eq!(rational_to_json(&rat(11, 2)), serde_json::json!("11/2"));
        assert_eq!(rational_from_json(&serde_json::json!("3/2")).unwrap(), rat(3, 2));
        assert_eq!(rational_from_json(&serde_json::json!(-2)).unwrap(), rat_int(-2));
    }
}
