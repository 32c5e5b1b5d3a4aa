//! Exact rational scalars: arbitrary precision, always in lowest terms with a
//! positive denominator (both guaranteed by `num_rational::Ratio`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{PlError, Result};

pub type Rat = BigRational;

/// `rat(p, q)` is the rational p/q, reduced.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses "p/q" or a bare integer "p". Whitespace around the parts is accepted.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = |msg: &str| PlError::InvalidRat(format!("{s:?}: {msg}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad("bad denominator"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

/// Canonical "p/q" rendering; integers print without the "/1".
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Deterministic tie-break key used when picking witness points: smaller
/// denominator first, then smaller absolute numerator, then sign.
pub fn witness_key(r: &Rat) -> (BigInt, BigInt, bool) {
    (r.denom().clone(), r.numer().abs(), r.numer().is_negative())
}
