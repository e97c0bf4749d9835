//! Rational helpers: `p/q` parsing and formatting, small constructors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Always `p/q`, including integers (`3/1`), so every rational in an output
/// file has the same shape.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p`, `p/q` and `-p/q`; the result is reduced.
pub fn parse(s: &str) -> Result<Rational, ParseError> {
    let t = s.trim();
    let offset = s.len() - s.trim_start().len();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let n: BigInt = num
        .trim()
        .parse()
        .map_err(|_| ParseError::new(s, offset, format!("bad numerator `{num}`")))?;
    let d: BigInt = match den {
        Some(d) => d.trim().parse().map_err(|_| {
            ParseError::new(s, offset + num.len() + 1, format!("bad denominator `{d}`"))
        })?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ParseError::new(s, offset + num.len() + 1, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn pow(r: &Rational, k: u32) -> Rational {
    num_traits::pow(r.clone(), k as usize)
}

/// Decimal approximation for human-readable tables only.
pub fn approx(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
