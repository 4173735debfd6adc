//! Exact rational helpers shared by the series and matrix code.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; used for q-exponents and matrix entries.
pub type Rat = Rational64;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n)
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

/// Returns the value if `r` is an integer.
pub fn as_integer(r: &Rat) -> Option<i64> {
    r.is_integer().then(|| r.to_integer())
}

/// Floor of a rational.
pub fn floor(r: &Rat) -> i64 {
    r.numer().div_floor(r.denom())
}

/// Formats as `p/q`, or `p` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Always formats as `p/q` (canonical series text form).
pub fn format_rat_full(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => s.parse::<i64>().map(rat).map_err(|_| bad()),
    }
}

/// Sum of absolute values, as a rational.
pub fn l1(v: &[Rat]) -> Rat {
    v.iter().map(|x| x.abs()).sum()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_rats(v: &[i64]) -> Vec<Rat> {
    v.iter().copied().map(rat).collect()
}
