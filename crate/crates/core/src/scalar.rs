//! Exact rational scalars.
//!
//! `Scalar` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. The text form is `p/q`, or just `p` when `q = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

fn parse_integer(digits: &str, whole: &str) -> Result<BigInt, ParseScalarError> {
    let body = digits.strip_prefix('-').unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseScalarError::Malformed(whole.to_string()));
    }
    digits
        .parse::<BigInt>()
        .map_err(|_| ParseScalarError::Malformed(whole.to_string()))
}

/// Parses `p/q` or `p`. A sign is only accepted on the numerator.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseScalarError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(parse_integer(text, text)?)),
        Some((num, den)) => {
            let num = parse_integer(num, text)?;
            if den.starts_with('-') {
                return Err(ParseScalarError::Malformed(text.to_string()));
            }
            let den = parse_integer(den, text)?;
            if den.is_zero() {
                return Err(ParseScalarError::ZeroDenominator(text.to_string()));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Renders in the canonical `p/q` / `p` form.
pub fn format_scalar(q: &Scalar) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Formats `coeff * label` terms as a signed sum, skipping zeros.
pub fn format_combination<'s>(terms: impl IntoIterator<Item = (&'s Scalar, &'s str)>) -> String {
    let mut out = String::new();
    for (coeff, label) in terms {
        if coeff.is_zero() {
            continue;
        }
        let magnitude = coeff.abs();
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if label == "1" {
            out.push_str(&format_scalar(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(label);
        } else {
            out.push_str(&format_scalar(&magnitude));
            out.push('*');
            out.push_str(label);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("-7/2").unwrap(), ratio(-7, 2));
        assert_eq!(parse_scalar("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_scalar(" 1/2 ").unwrap(), ratio(1, 2));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(parse_scalar(""), Err(ParseScalarError::Empty));
        assert!(matches!(parse_scalar("1/0"), Err(ParseScalarError::ZeroDenominator(_))));
        assert!(matches!(parse_scalar("1/-2"), Err(ParseScalarError::Malformed(_))));
        assert!(matches!(parse_scalar("1.5"), Err(ParseScalarError::Malformed(_))));
        assert!(matches!(parse_scalar("a/b"), Err(ParseScalarError::Malformed(_))));
        assert!(matches!(parse_scalar("+3"), Err(ParseScalarError::Malformed(_))));
        assert!(matches!(parse_scalar("1/2/3"), Err(ParseScalarError::Malformed(_))));
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_scalar(&ratio(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(5)), "5");
        assert_eq!(format_scalar(&zero()), "0");
    }

    #[test]
    fn formats_combinations() {
        let c = [int(10), int(-1), ratio(1, 2)];
        let terms = c.iter().zip(["c", "e", "1"]);
        assert_eq!(format_combination(terms), "10*c - e + 1/2");
        assert_eq!(format_combination(std::iter::empty()), "0");
    }

    proptest! {
        #[test]
        fn text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = ratio(n, d);
            prop_assert_eq!(parse_scalar(&format_scalar(&q)).unwrap(), q);
        }
    }
}
