//! Rational helpers.

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::InvalidParameter("non-finite value".to_string()))
}

/// `"p/q"` text form; integers are written as `"p"`.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let r: Rational = t
        .parse()
        .map_err(|_| Error::InvalidParameter(alloc::format!("bad rational `{t}`")))?;
    Ok(r)
}

pub fn pow(r: &Rational, k: u32) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    num_traits::pow(r.clone(), k as usize)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
