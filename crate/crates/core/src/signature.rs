//! Signatures of `U(N)` and interlacing.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A non-increasing integer sequence of length `N >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    parts: Vec<i64>,
}

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidSignature("empty signature".into()));
        }
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidSignature(format!(
                "entries {} and {} increase ({} < {})",
                i + 1,
                i + 2,
                parts[i],
                parts[i + 1]
            )));
        }
        Ok(Signature { parts })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Signature::new(alloc::vec![0; n])
    }

    /// Rebuild a signature from its shifted coordinates `lambda_i + N - i`.
    pub fn from_shifted(shifted: &[i64]) -> Result<Self> {
        let n = shifted.len() as i64;
        if shifted.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSignature(
                "shifted coordinates must strictly decrease".into(),
            ));
        }
        Signature::new(
            shifted
                .iter()
                .enumerate()
                .map(|(i, &l)| l - (n - 1 - i as i64))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// `lambda_i + N - i` for `i = 1..N`, strictly decreasing.
    pub fn shifted(&self) -> Vec<i64> {
        let n = self.parts.len() as i64;
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &l)| l + n - 1 - i as i64)
            .collect()
    }

    /// Add `c` to every entry (tensoring with a power of the determinant).
    pub fn shift_by(&self, c: i64) -> Signature {
        Signature {
            parts: self.parts.iter().map(|&l| l + c).collect(),
        }
    }
}

impl core::fmt::Display for Signature {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `lambda_1 >= mu_1 >= lambda_2 >= ... >= mu_{N-1} >= lambda_N`.
pub fn interlaces(lambda: &Signature, mu: &Signature) -> Result<bool> {
    if mu.len() + 1 != lambda.len() {
        return Err(Error::LengthMismatch {
            expected: lambda.len() - 1,
            found: mu.len(),
        });
    }
    let l = lambda.parts();
    Ok(mu
        .parts()
        .iter()
        .enumerate()
        .all(|(i, &m)| l[i] >= m && m >= l[i + 1]))
}

/// A signature of length `N >= 2` together with an interlacing signature of length `N - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacingPair {
    upper: Signature,
    lower: Signature,
}

impl InterlacingPair {
    pub fn new(upper: Signature, lower: Signature) -> Result<Self> {
        if upper.len() < 2 {
            return Err(Error::InvalidSignature(
                "upper signature of an interlacing pair needs length >= 2".into(),
            ));
        }
        if !interlaces(&upper, &lower)? {
            return Err(Error::NotInterlacing);
        }
        Ok(InterlacingPair { upper, lower })
    }

    pub fn upper(&self) -> &Signature {
        &self.upper
    }

    pub fn lower(&self) -> &Signature {
        &self.lower
    }

    pub fn n(&self) -> usize {
        self.upper.len()
    }
}

/// Every signature interlacing with `lambda`, in lexicographically decreasing order.
pub fn interlacing_signatures(lambda: &Signature) -> Vec<Signature> {
    let l = lambda.parts();
    let mut out = Vec::new();
    if l.len() < 2 {
        return out;
    }
    let mut cur = alloc::vec![0i64; l.len() - 1];
    fn rec(l: &[i64], i: usize, cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
        if i == cur.len() {
            out.push(Signature { parts: cur.clone() });
            return;
        }
        let mut v = l[i];
        while v >= l[i + 1] {
            cur[i] = v;
            rec(l, i + 1, cur, out);
            v -= 1;
        }
    }
    rec(l, 0, &mut cur, &mut out);
    out
}

/// Number of signatures interlacing with `lambda`.
pub fn interlacing_count(lambda: &Signature) -> u128 {
    lambda
        .parts()
        .windows(2)
        .map(|w| (w[0] - w[1] + 1) as u128)
        .product()
}
