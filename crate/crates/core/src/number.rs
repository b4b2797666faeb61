//! Exact arithmetic for weights and bounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Finite weights and bounds are exact rationals.
pub type Rational = BigRational;

/// Builds a rational from an integer.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// A rational number extended with the two symbolic infinities.
///
/// The derived ordering places `NegInfinity` below every finite value and
/// `PosInfinity` above it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExactNumber {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl ExactNumber {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExactNumber::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExactNumber::Finite(value) => Some(value),
            _ => None,
        }
    }
}

impl From<Rational> for ExactNumber {
    fn from(value: Rational) -> Self {
        ExactNumber::Finite(value)
    }
}

impl From<i64> for ExactNumber {
    fn from(value: i64) -> Self {
        ExactNumber::Finite(int(value))
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNumber::NegInfinity => write!(f, "-inf"),
            ExactNumber::PosInfinity => write!(f, "+inf"),
            ExactNumber::Finite(value) => write!(f, "{}", DisplayRational(value)),
        }
    }
}

/// Renders a rational as `n` or `n/d`.
pub struct DisplayRational<'a>(pub &'a Rational);

impl fmt::Display for DisplayRational<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseNumberError {
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `n`, `-n`, `n/d` or `-n/d`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseNumberError> {
    let malformed = || ParseNumberError::Malformed(text.to_string());
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = numer.strip_prefix('-').unwrap_or(numer);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let numer = BigInt::from_str(numer).map_err(|_| malformed())?;
    let denom = match denom {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            BigInt::from_str(d).map_err(|_| malformed())?
        }
    };
    if denom.is_zero() {
        return Err(ParseNumberError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

pub(crate) fn abs(value: &Rational) -> Rational {
    value.abs()
}
