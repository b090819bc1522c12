//! Scalar type and helpers. All geometry in this crate runs over `Rat`,
//! an arbitrary precision rational, so sign tests are exact.

use num_bigint::{BigInt, Sign};
use num_traits::Zero;
use std::str::FromStr;

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

/// Sign of a rational as -1, 0, or 1.
///
/// `BigRational` keeps its denominator positive, so the numerator sign is the
/// sign of the value.
pub fn sign(x: &Rat) -> i8 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn rat_from_i64(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Test and glue helper: `n/d` as a `Rat`. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(Int::from(n), Int::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl std::fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "malformed rational {:?}: expected \"int\" or \"int/int\" with nonzero denominator",
            self.0
        )
    }
}

impl std::error::Error for ParseRatError {}

/// Parse `"-3"` or `"-3/4"`. Whitespace is not accepted; the denominator must
/// be nonzero. The result is reduced and the denominator made positive.
pub fn parse(s: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError(s.to_owned());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = Int::from_str(num_str).map_err(|_| err())?;
    let den = Int::from_str(den_str).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rat::new(num, den))
}

/// Format as `"num"` when the value is an integer, else `"num/den"`.
/// `parse(&format(x)) == x` for every `x`.
pub fn format(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
