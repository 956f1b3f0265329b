//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational; `num_rational` keeps every value
//! reduced with a positive denominator, which is exactly the normal form the
//! serialized artifacts require.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rat = BigRational;

/// Rational from machine integers; panics on zero denominator, which only a
/// hardcoded constant could trigger.
pub fn rat(numer: i64, denom: i64) -> Rat {
    assert!(denom != 0, "rat() needs a nonzero denominator");
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

/// Renders in the canonical form used across all file formats: `p` for
/// integers, `p/q` otherwise, with q > 0 and gcd(p, q) = 1.
pub fn rat_to_string(value: &Rat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p` or `p/q`. Rejects a zero denominator instead of panicking the
/// way `BigRational::from_str` would.
pub fn rat_from_str(text: &str) -> Result<Rat, Error> {
    let text = text.trim();
    let (numer_text, denom_text) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numer: BigInt = numer_text
        .parse()
        .map_err(|_| Error::parse(format!("bad rational numerator in {text:?}")))?;
    let denom: BigInt = denom_text
        .parse()
        .map_err(|_| Error::parse(format!("bad rational denominator in {text:?}")))?;
    if denom.is_zero() {
        return Err(Error::parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rat::new(numer, denom))
}

/// True when the value is an integer multiple of `1/q`.
pub fn is_multiple_of_unit_fraction(value: &Rat, q: u64) -> bool {
    (value * rat_int(q as i64)).denom().is_one()
}

pub fn is_nonnegative(value: &Rat) -> bool {
    !value.is_negative()
}
