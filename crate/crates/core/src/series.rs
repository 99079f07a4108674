//! Truncated power series over exact rationals or doubles.

use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Coefficient ring for [`TruncatedSeries`].
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    /// Exact equality for rationals, relative closeness for doubles.
    fn close_to(&self, other: &Self, rel_tol: f64) -> bool;
    fn to_f64(&self) -> f64;
}

impl Coeff for Rational {
    fn from_i64(n: i64) -> Self {
        crate::rational::int(n)
    }

    fn close_to(&self, other: &Self, _rel_tol: f64) -> bool {
        self == other
    }

    fn to_f64(&self) -> f64 {
        crate::rational::to_f64(self)
    }
}

impl Coeff for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn close_to(&self, other: &Self, rel_tol: f64) -> bool {
        (self - other).abs() <= rel_tol * (1.0 + self.abs().max(other.abs()))
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Expansion point of a series variable: `z` itself, or `t = z - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Center {
    Zero,
    One,
}

/// `sum_{i <= order} c_i v^i` where `v` is the variable offset from the center.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    center: Center,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn new(center: Center, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSeries(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(TruncatedSeries { center, coeffs })
    }

    pub fn zero(center: Center, order: usize) -> Self {
        TruncatedSeries {
            center,
            coeffs: alloc::vec![C::zero(); order + 1],
        }
    }

    pub fn constant(center: Center, c: C, order: usize) -> Self {
        let mut s = Self::zero(center, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(center: Center, order: usize) -> Self {
        Self::constant(center, C::one(), order)
    }

    /// The variable `v` itself.
    pub fn variable(center: Center, order: usize) -> Self {
        let mut s = Self::zero(center, order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    pub fn center(&self) -> Center {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        TruncatedSeries {
            center: self.center,
            coeffs,
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            center: self.center,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn same_center(&self, other: &Self) -> Result<()> {
        if self.center != other.center {
            return Err(Error::CenterMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_center(other)?;
        let n = self.order().min(other.order());
        Ok(TruncatedSeries {
            center: self.center,
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add_constant(&self, c: &C) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = s.coeffs[0].clone() + c.clone();
        s
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_center(other)?;
        let n = self.order().min(other.order());
        let mut coeffs = alloc::vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(TruncatedSeries {
            center: self.center,
            coeffs,
        })
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one(self.center, self.order());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same center");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same center");
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::InvalidSeries("constant term is zero".into()));
        }
        let n = self.order();
        let mut inv: Vec<C> = Vec::with_capacity(n + 1);
        inv.push(C::one() / c0.clone());
        for k in 1..=n {
            let mut s = C::zero();
            for j in 1..=k {
                s = s + self.coeffs[j].clone() * inv[k - j].clone();
            }
            inv.push(-s / c0.clone());
        }
        Ok(TruncatedSeries {
            center: self.center,
            coeffs: inv,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidSeries(
                "exp needs a zero constant term".into(),
            ));
        }
        let n = self.order();
        let mut f: Vec<C> = Vec::with_capacity(n + 1);
        f.push(C::one());
        for m in 1..=n {
            let mut s = C::zero();
            for k in 1..=m {
                s = s + C::from_i64(k as i64) * self.coeffs[k].clone() * f[m - k].clone();
            }
            f.push(s / C::from_i64(m as i64));
        }
        Ok(TruncatedSeries {
            center: self.center,
            coeffs: f,
        })
    }

    /// `log` of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidSeries("log needs constant term 1".into()));
        }
        let n = self.order();
        let mut g: Vec<C> = Vec::with_capacity(n + 1);
        g.push(C::zero());
        for m in 1..=n {
            let mut s = C::zero();
            for (k, gk) in g.iter().enumerate().skip(1) {
                s = s + C::from_i64(k as i64) * gk.clone() * self.coeffs[m - k].clone();
            }
            g.push(self.coeffs[m].clone() - s / C::from_i64(m as i64));
        }
        Ok(TruncatedSeries {
            center: self.center,
            coeffs: g,
        })
    }

    /// Derivative in the variable; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(self.center, 0);
        }
        TruncatedSeries {
            center: self.center,
            coeffs: (1..self.coeffs.len())
                .map(|i| C::from_i64(i as i64) * self.coeffs[i].clone())
                .collect(),
        }
    }

    /// Antiderivative vanishing at the center; the order grows by one.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / C::from_i64(i as i64 + 1));
        }
        TruncatedSeries {
            center: self.center,
            coeffs,
        }
    }

    /// Multiply by the variable; the order grows by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries {
            center: self.center,
            coeffs,
        }
    }

    /// Divide by the variable; needs a zero constant term and order at least one.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() || self.order() == 0 {
            return Err(Error::InvalidSeries(
                "division by the variable needs a zero constant term".into(),
            ));
        }
        Ok(TruncatedSeries {
            center: self.center,
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `self(inner(v))`; `inner` must have a zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InvalidSeries(
                "inner series must vanish at its center".into(),
            ));
        }
        let n = self.order().min(inner.order());
        let inner = TruncatedSeries {
            center: inner.center,
            coeffs: inner.coeffs[..=n].to_vec(),
        };
        let mut acc = Self::constant(inner.center, self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&inner)?.add_constant(&self.coeffs[i]);
        }
        Ok(acc)
    }

    /// Compositional inverse of `a_1 v + a_2 v^2 + ...` with `a_1` invertible.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::InvalidSeries(
                "reversion needs zero constant term and invertible linear term".into(),
            ));
        }
        let a1 = self.coeffs[1].clone();
        let mut r = Self::zero(self.center, n);
        r.coeffs[1] = C::one() / a1.clone();
        for m in 2..=n {
            let mut partial = r.truncate(m);
            partial.coeffs[m] = C::zero();
            let mut power = partial.clone();
            let mut s = C::zero();
            for k in 2..=m {
                power = power.mul(&partial)?;
                s = s + self.coeffs[k].clone() * power.coeff(m);
            }
            r.coeffs[m] = -s / a1.clone();
        }
        Ok(r)
    }

    /// Coefficient-wise comparison up to the smaller order.
    pub fn close_to(&self, other: &Self, rel_tol: f64) -> bool {
        let n = self.order().min(other.order());
        self.center == other.center
            && (0..=n).all(|i| self.coeffs[i].close_to(&other.coeffs[i], rel_tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn s(c: &[(i64, i64)]) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(Center::Zero, c.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    #[test]
    fn exp_log_inverse() {
        let x = s(&[(0, 1), (1, 1), (0, 1), (0, 1), (0, 1)]);
        let e = x.exp().unwrap();
        assert_eq!(e, s(&[(1, 1), (1, 1), (1, 2), (1, 6), (1, 24)]));
        assert_eq!(e.log().unwrap(), x);
        let one = e.mul(&e.inverse().unwrap()).unwrap();
        assert_eq!(one, TruncatedSeries::one(Center::Zero, 4));
    }

    #[test]
    fn reversion() {
        // v + v^2 reverts to v - v^2 + 2v^3 - 5v^4 (Catalan numbers)
        let f = s(&[(0, 1), (1, 1), (1, 1), (0, 1), (0, 1)]);
        let r = f.revert().unwrap();
        assert_eq!(r, s(&[(0, 1), (1, 1), (-1, 1), (2, 1), (-5, 1)]));
        assert_eq!(
            f.compose(&r).unwrap(),
            TruncatedSeries::variable(Center::Zero, 4)
        );
        assert_eq!(r.revert().unwrap(), f);
    }

    #[test]
    fn errors() {
        let one = TruncatedSeries::<Rational>::one(Center::Zero, 3);
        assert!(one.exp().is_err());
        assert!(TruncatedSeries::<Rational>::zero(Center::Zero, 3)
            .log()
            .is_err());
        assert!(one.revert().is_err());
        let other = TruncatedSeries::<Rational>::one(Center::One, 3);
        assert_eq!(one.add(&other), Err(Error::CenterMismatch));
        assert!(TruncatedSeries::<Rational>::new(Center::Zero, Vec::new()).is_err());
    }

    #[test]
    fn calculus() {
        let f = s(&[(1, 1), (2, 1), (3, 1)]);
        assert_eq!(f.derivative(), s(&[(2, 1), (6, 1)]));
        assert_eq!(f.integral().derivative(), f);
        assert_eq!(f.shift_up().shift_down().unwrap(), f);
        assert_eq!(f.powi(2).coeff(2), int(10));
    }
}
