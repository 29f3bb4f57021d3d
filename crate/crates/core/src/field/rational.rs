//! Exact rationals and their lossless string form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{Error, Result};

/// Arbitrary-precision reduced fraction with positive denominator.
pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Always `"p/q"`, also for integers (`"-3/1"`).
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"` and plain integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    } else {
        Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
    }
}
