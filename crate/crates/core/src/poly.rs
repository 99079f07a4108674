//! Multivariate Laurent polynomials with rational coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Exponent vectors map to nonzero coefficients; keys are ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::monomial(alloc::vec![0; nvars], Rational::one())
    }

    pub fn monomial(exps: Vec<i32>, coeff: Rational) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = alloc::vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Rational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, coeff: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        let remove = {
            let e = self
                .terms
                .entry(exps.clone())
                .or_insert_with(Rational::zero);
            *e += coeff;
            e.is_zero()
        };
        if remove {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Vec<i32>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }

    /// Apply `coeff -> f(exponents) * coeff` to every term.
    pub fn map_terms(&self, f: impl Fn(&[i32]) -> Rational) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * f(e));
        }
        p
    }

    fn exponent_range(&self, i: usize) -> (i32, i32) {
        self.terms
            .keys()
            .fold((i32::MAX, i32::MIN), |(l, h), e| (l.min(e[i]), h.max(e[i])))
    }

    /// Exact quotient; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (dl, dc) = match divisor.leading_term() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => {
                return Err(Error::InvalidParameter(
                    "division by zero polynomial".into(),
                ))
            }
        };
        let mut q = Poly::zero(self.nvars);
        if self.is_zero() {
            return Ok(q);
        }
        // every exponent of an exact quotient lies in this box
        let bounds: Vec<(i32, i32)> = (0..self.nvars)
            .map(|i| {
                let (sl, sh) = self.exponent_range(i);
                let (dl, dh) = divisor.exponent_range(i);
                (sl - dl, sh - dh)
            })
            .collect();
        let mut rem = self.clone();
        while let Some((e, c)) = rem.leading_term() {
            let qe: Vec<i32> = e.iter().zip(&dl).map(|(x, y)| x - y).collect();
            if qe.iter().zip(&bounds).any(|(x, (l, h))| x < l || x > h) {
                return Err(Error::InvalidParameter(
                    "polynomial is not divisible".into(),
                ));
            }
            let qc = c / &dc;
            let t = Poly::monomial(qe.clone(), qc.clone());
            rem = rem.sub(&t.mul(divisor));
            q.add_term(qe, qc);
        }
        Ok(q)
    }

    /// Set the last variable to one.
    pub fn drop_last_at_one(&self) -> Poly {
        let mut p = Poly::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            p.add_term(e[..self.nvars - 1].to_vec(), c.clone());
        }
        p
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                t *= num_traits::pow::Pow::pow(xi, ei);
            }
            acc + t
        })
    }
}

/// `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde(n: usize) -> Poly {
    let mut p = Poly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            p = p.mul(&Poly::variable(n, i).sub(&Poly::variable(n, j)));
        }
    }
    p
}
