use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::dimension::weyl_dimension;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::signature::{interlacing_count, interlacing_signatures, Signature};

pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// `P(mu | lambda) = dim mu / dim lambda` over all `mu` interlacing with `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingLaw {
    parent: Signature,
    entries: Vec<(Signature, Rational)>,
}

impl BranchingLaw {
    pub fn parent(&self) -> &Signature {
        &self.parent
    }

    pub fn entries(&self) -> &[(Signature, Rational)] {
        &self.entries
    }

    pub fn prob(&self, mu: &Signature) -> Rational {
        self.entries
            .iter()
            .find(|(m, _)| m == mu)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(Rational::zero)
    }
}

pub fn branching_law(lambda: &Signature, cap: u128) -> Result<BranchingLaw> {
    if lambda.len() < 2 {
        return Err(Error::InvalidSignature("branching needs N >= 2".into()));
    }
    let count = interlacing_count(lambda);
    if count > cap {
        return Err(Error::EnumerationCap { count, cap });
    }
    let dl = weyl_dimension(lambda);
    let entries = interlacing_signatures(lambda)
        .into_iter()
        .map(|mu| {
            let p = Rational::new(weyl_dimension(&mu), dl.clone());
            (mu, p)
        })
        .collect();
    Ok(BranchingLaw {
        parent: lambda.clone(),
        entries,
    })
}

/// Finitely supported probability law on signatures of one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureLaw {
    n: usize,
    entries: BTreeMap<Signature, Rational>,
}

impl SignatureLaw {
    pub fn new(entries: Vec<(Signature, Rational)>) -> Result<Self> {
        let n = match entries.first() {
            Some((s, _)) => s.len(),
            None => return Err(Error::InvalidMeasure("empty law".into())),
        };
        let mut map: BTreeMap<Signature, Rational> = BTreeMap::new();
        for (s, p) in entries {
            if s.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: s.len(),
                });
            }
            if p.is_negative() {
                return Err(Error::InvalidMeasure(format!(
                    "negative probability at {s}"
                )));
            }
            *map.entry(s).or_insert_with(Rational::zero) += p;
        }
        map.retain(|_, p| !p.is_zero());
        let total: Rational = map.values().cloned().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(SignatureLaw { n, entries: map })
    }

    pub fn delta(lambda: Signature) -> Self {
        let n = lambda.len();
        let mut entries = BTreeMap::new();
        entries.insert(lambda, Rational::one());
        SignatureLaw { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &BTreeMap<Signature, Rational> {
        &self.entries
    }

    pub fn prob(&self, lambda: &Signature) -> Rational {
        self.entries
            .get(lambda)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Push forward one level down through the branching kernel.
    pub fn project(&self, cap: u128) -> Result<SignatureLaw> {
        let mut out: BTreeMap<Signature, Rational> = BTreeMap::new();
        for (lambda, p) in &self.entries {
            for (mu, q) in branching_law(lambda, cap)?.entries {
                *out.entry(mu).or_insert_with(Rational::zero) += p * q;
            }
        }
        Ok(SignatureLaw {
            n: self.n - 1,
            entries: out,
        })
    }
}
