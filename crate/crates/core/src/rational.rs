//! Small helpers around exact rational scalars.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rational scalar used for lattice coordinates.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[Q], b: &[i64]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, &y)| acc + x * y)
}

pub fn to_big(x: &Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

pub fn big_from_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Convert back to a machine rational; fails on overflow.
pub fn from_big(x: &BigRational) -> Result<Q> {
    let n = x
        .numer()
        .to_i64()
        .ok_or_else(|| Error::Internal(format!("numerator of {x} overflows i64")))?;
    let d = x
        .denom()
        .to_i64()
        .ok_or_else(|| Error::Internal(format!("denominator of {x} overflows i64")))?;
    Ok(Q::new(n, d))
}

pub fn integral(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer())
}

/// All coordinates integral, returned as `i64`.
pub fn integral_vec(v: &[Q]) -> Option<Vec<i64>> {
    v.iter().map(integral).collect()
}

pub fn sup_norm(v: &[Q]) -> Q {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
}

/// Render as `p/q`, or `p` when integral.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_big(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => s.parse::<i64>().map(q).map_err(|_| bad()),
    }
}

/// Parse a comma separated list of integers such as `2,1,0`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
        })
        .collect()
}

/// p-adic valuation of an integer; `i64::MAX` for zero.
pub fn val_int(n: &BigInt, p: u64) -> i64 {
    if n.is_zero() {
        return i64::MAX;
    }
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    v
}

/// p-adic valuation of a rational; `i64::MAX` for zero.
pub fn val(x: &BigRational, p: u64) -> i64 {
    if x.is_zero() {
        return i64::MAX;
    }
    val_int(x.numer(), p) - val_int(x.denom(), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_q("3/2").unwrap(), Q::new(3, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert_eq!(fmt_q(&Q::new(-6, 4)), "-3/2");
    }

    #[test]
    fn valuations() {
        let x = BigRational::new(BigInt::from(24), BigInt::from(9));
        assert_eq!(val(&x, 2), 3);
        assert_eq!(val(&x, 3), -1);
        assert_eq!(val(&BigRational::zero(), 5), i64::MAX);
    }
}
