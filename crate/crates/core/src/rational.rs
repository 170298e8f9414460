//! Exact rationals and their `"num/den"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Lowest-terms `"num/den"`, always with an explicit denominator.
pub fn to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse(s: &str) -> Result<Rational> {
    let bad = |msg: String| Error::Parse { line: 0, msg };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|e| bad(format!("{s:?}: {e}")))?;
    let d: BigInt = d.parse().map_err(|e| bad(format!("{s:?}: {e}")))?;
    if num_traits::Zero::is_zero(&d) {
        return Err(bad(format!("{s:?}: zero denominator")));
    }
    Ok(Rational::new(n, d))
}

/// True iff the denominator is 2 in lowest terms.
pub fn is_strict_half(r: &Rational) -> bool {
    *r.denom() == BigInt::from(2)
}

pub fn is_weak_half(r: &Rational) -> bool {
    r.is_integer() || is_strict_half(r)
}

pub fn factorial_recip(q: usize) -> Rational {
    let f: BigInt = (1..=q).map(BigInt::from).product();
    Rational::new(BigInt::one(), f)
}
