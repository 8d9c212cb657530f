//! Exact rational scalars and their text encoding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, the coefficient field everywhere.
pub type ExactScalar = BigRational;

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(q: &ExactScalar) -> bool {
    q.denom().is_one()
}

/// Encodes as `"p/q"`, always with an explicit denominator.
pub fn to_ratio_string(q: &ExactScalar) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_ratio(s: &str) -> Result<ExactScalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a ratio string: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a ExactScalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub(crate) fn abs_cmp(a: &BigInt, b: &BigInt) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs())
}

/// Binomial coefficient as an exact scalar; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> ExactScalar {
    if k > n {
        return ExactScalar::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

pub fn pow(q: &ExactScalar, k: u32) -> ExactScalar {
    num_traits::pow(q.clone(), k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_strings() {
        assert_eq!(to_ratio_string(&rat(-6, 4)), "-3/2");
        assert_eq!(to_ratio_string(&int(5)), "5/1");
        assert_eq!(parse_ratio("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_ratio(" 7 ").unwrap(), int(7));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 3), int(0));
        assert_eq!(binomial(0, 0), int(1));
    }
}
