//! Scalar abstraction shared by the containers in this crate.

use std::fmt::Debug;
use std::str::FromStr;

use num_traits::{Num, Signed};

use crate::error::CoreError;
use crate::Rational;

/// Field-like scalar used by matrices, Laurent polynomials and networks.
///
/// Exact rationals are the intended instantiation; `f64` also satisfies the
/// bound and is handy for quick numerical experiments, but equality tests on
/// floats are meaningless for the identities checked here.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {}

impl<T> Scalar for T where T: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {}

/// Parses `"p/q"` or `"p"` into a rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<Rational, CoreError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(CoreError::Parse("empty rational".into()));
    }
    if let Some((_, den)) = trimmed.split_once('/') {
        if den.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(CoreError::Parse(format!("zero denominator in {trimmed:?}")));
        }
    }
    Rational::from_str(trimmed).map_err(|_| CoreError::Parse(format!("invalid rational {trimmed:?}")))
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Shorthand for an integer-valued rational.
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(value.into())
}

/// Shorthand for `num / den`.
///
/// # Panics
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for text in ["0", "1", "-3", "22/7", "-1/2"] {
            assert_eq!(format_rational(&parse_rational(text).unwrap()), text);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
