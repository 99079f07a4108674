//! Finitely supported measures with exact rational atoms.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, pow, rat, Rational};
use crate::signature::{InterlacingPair, Signature};

/// Anything with exact moments `int x^k`.
pub trait Moments {
    fn moment(&self, k: u32) -> Rational;
}

/// Free-function form of [`Moments::moment`].
pub fn moment<M: Moments + ?Sized>(m: &M, k: u32) -> Rational {
    m.moment(k)
}

fn canonicalize(mut atoms: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    atoms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(atoms.len());
    for (x, w) in atoms {
        match out.last_mut() {
            Some(last) if last.0 == x => last.1 += w,
            _ => out.push((x, w)),
        }
    }
    out.retain(|(_, w)| !w.is_zero());
    out
}

fn atoms_moment(atoms: &[(Rational, Rational)], k: u32) -> Rational {
    atoms
        .iter()
        .fold(Rational::zero(), |acc, (x, w)| acc + w * pow(x, k))
}

/// Nonnegative atoms, sorted by location with equal locations merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicMeasure {
    atoms: Vec<(Rational, Rational)>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<(Rational, Rational)>) -> Result<Self> {
        if let Some((x, w)) = atoms.iter().find(|(_, w)| w.is_negative()) {
            return Err(Error::InvalidMeasure(format!("negative weight {w} at {x}")));
        }
        Ok(AtomicMeasure {
            atoms: canonicalize(atoms),
        })
    }

    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> Rational {
        self.atoms.iter().map(|(_, w)| w.clone()).sum()
    }

    pub fn is_probability(&self) -> bool {
        self.total_mass().is_one()
    }
}

impl Moments for AtomicMeasure {
    fn moment(&self, k: u32) -> Rational {
        atoms_moment(&self.atoms, k)
    }
}

/// Atoms of arbitrary sign, canonicalized like [`AtomicMeasure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedAtomicMeasure {
    atoms: Vec<(Rational, Rational)>,
}

impl SignedAtomicMeasure {
    pub fn new(atoms: Vec<(Rational, Rational)>) -> Self {
        SignedAtomicMeasure {
            atoms: canonicalize(atoms),
        }
    }

    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> Rational {
        self.atoms.iter().map(|(_, w)| w.clone()).sum()
    }
}

impl Moments for SignedAtomicMeasure {
    fn moment(&self, k: u32) -> Rational {
        atoms_moment(&self.atoms, k)
    }
}

/// Unit atoms at `(lambda_i + N - i) / N`, each of weight `1/N`.
pub fn counting_measure(lambda: &Signature) -> AtomicMeasure {
    let n = lambda.len() as i64;
    let atoms = lambda
        .shifted()
        .into_iter()
        .map(|l| (rat(l, n), rat(1, n)))
        .collect();
    AtomicMeasure {
        atoms: canonicalize(atoms),
    }
}

/// `+1` atoms at `lambda~_i / N`, `-1` atoms at `(mu_i + N - 1 - i) / N`.
pub fn difference_measure(pair: &InterlacingPair) -> SignedAtomicMeasure {
    let n = pair.n() as i64;
    let plus = pair
        .upper()
        .shifted()
        .into_iter()
        .map(|l| (rat(l, n), int(1)));
    let minus = pair
        .lower()
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &m)| (rat(m + n - 2 - i as i64, n), int(-1)));
    SignedAtomicMeasure::new(plus.chain(minus).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: &[i64]) -> Signature {
        Signature::new(p.to_vec()).unwrap()
    }

    #[test]
    fn counting_measure_of_zero() {
        let m = counting_measure(&sig(&[0, 0, 0]));
        let locs: Vec<_> = m.atoms().iter().map(|a| a.0.clone()).collect();
        assert_eq!(locs, alloc::vec![int(0), rat(1, 3), rat(2, 3)]);
        assert!(m.is_probability());
        assert_eq!(m.moment(1), rat(1, 3));
    }

    #[test]
    fn merges_and_rejects() {
        let m = AtomicMeasure::new(alloc::vec![(int(1), rat(1, 2)), (int(1), rat(1, 2))]).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert!(AtomicMeasure::new(alloc::vec![(int(0), int(-1))]).is_err());
    }

    #[test]
    fn difference_of_pair() {
        let p = InterlacingPair::new(sig(&[1, 0]), sig(&[0])).unwrap();
        let d = difference_measure(&p);
        assert_eq!(d.total_mass(), int(1));
        // atoms +1 at 1, +1 at 0, -1 at 0
        assert_eq!(d.atoms(), &[(int(1), int(1))]);
        assert_eq!(d.moment(0), int(1));
    }
}
