//! Exact rational scalars.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

pub fn int(value: i64) -> Q {
    Q::from_integer(BigInt::from(value))
}

/// `num / den` in lowest terms. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn ints(values: &[i64]) -> Vec<Q> {
    values.iter().copied().map(int).collect()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`; surrounding whitespace is ignored.
pub fn parse(text: &str) -> Result<Q> {
    let text = text.trim();
    let bad = || Error::Invalid(format!("not an exact rational: {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Invalid(format!("zero denominator in {text:?}")));
            }
            Ok(Q::new(num, den))
        }
        None => Ok(Q::from_integer(BigInt::from_str(text).map_err(|_| bad())?)),
    }
}

/// Canonical string form: `"p/q"` in lowest terms with positive denominator,
/// or `"p"` for integers.
pub fn to_string(value: &Q) -> String {
    value.to_string()
}

pub fn vec_to_strings(values: &[Q]) -> Vec<String> {
    values.iter().map(to_string).collect()
}

pub fn is_integral(value: &Q) -> bool {
    value.is_integer()
}

/// `sum_i a_i b_i`.
pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_positive(value: &Q) -> bool {
    value.is_positive()
}
