//! Exact rational scalars and the linear algebra every other module
//! consumes: row reduction, kernels, orthogonal complements and the
//! Sylvester positive-definiteness test.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here can be shared freely across threads.

mod matrix;
mod subspace;

pub use matrix::RatMatrix;
pub use subspace::Subspace;

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational number, always normalized: positive
/// denominator, gcd(|numerator|, denominator) = 1.
pub type Rational = num_rational::BigRational;

/// Shorthand for `numer/denom`. Panics on a zero denominator; intended for
/// literals in code and tests. User input goes through [`parse_rational`].
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` with arbitrary-precision integers.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (numer_text, denom_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = numer_text
        .parse()
        .map_err(|_| ParseRationalError::BadInteger(numer_text.to_string()))?;
    let denom: BigInt = match denom_text {
        Some(d) => d
            .parse()
            .map_err(|_| ParseRationalError::BadInteger(d.to_string()))?,
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("`{0}` is not an integer")]
    BadInteger(String),
    #[error("`{0}` has denominator zero")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at entry ({row},{col})")]
    NotSymmetric { row: usize, col: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["0", "7", "-7", "5/2", "-5/2", "22/7"] {
            let r = parse_rational(text).unwrap();
            assert_eq!(r.to_string(), text);
        }
        // Normalization on input.
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("3/-6").unwrap(), rat(-1, 2));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert_eq!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator("1/0".to_string()))
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    proptest! {
        #[test]
        fn arithmetic_round_trips(a_n in -50i64..50, a_d in 1i64..20, b_n in -50i64..50, b_d in 1i64..20) {
            let a = rat(a_n, a_d);
            let b = rat(b_n, b_d);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a);
            }
        }
    }
}
