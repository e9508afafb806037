//! Exact rational helpers on top of `num`.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

/// Exact rational number used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Canonical `p/q` (or `p`) rendering.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p` or `p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// Denominator as `u64` (panics only for absurdly large denominators).
pub fn den_u64(x: &Q) -> u64 {
    x.denom().abs().to_u64().expect("denominator fits in u64")
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.denom().is_one() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Least common multiple of the denominators of `xs` (1 for an empty list).
pub fn lcm_den<'a>(xs: impl IntoIterator<Item = &'a Q>) -> u64 {
    xs.into_iter().fold(1u64, |acc, x| acc.lcm(&den_u64(x)))
}

/// Whether `x` lies in `(1/m) Z`.
pub fn in_lattice(x: &Q, m: u64) -> bool {
    (x * qi(m as i64)).denom().is_one()
}

pub fn floor_q(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil_q(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

pub fn is_pos(x: &Q) -> bool {
    x.is_positive()
}
