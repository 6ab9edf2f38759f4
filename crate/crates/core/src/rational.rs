//! Exact probability scalars.
//!
//! Everything in this crate is computed with arbitrary-precision rationals.
//! The canonical text form is always `num/den` (so `1` is written `1/1`),
//! which keeps documents byte-stable and free of floating point.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced rational with positive denominator.
pub type Rational = BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_biguint(value: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Renders `q` as `num/den`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den` or a bare integer. Whitespace around the parts is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::MalformedRational(text.to_string());
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Exact `e`-th root of a nonnegative rational, if it exists.
pub fn exact_root(q: &Rational, e: u32) -> Option<Rational> {
    if q.is_negative() || e == 0 {
        return None;
    }
    if e == 1 {
        return Some(q.clone());
    }
    let root = |v: &BigInt| -> Option<BigInt> {
        let r = v.nth_root(e);
        (num_traits::pow(r.clone(), e as usize) == *v).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// Least common multiple of the denominators, useful for exact sampling.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
