//! Limit moments of regular sequences of signatures.
//!
//! A profile stores the Taylor coefficients `c_k = H^{(k)}(1)` for `k >= 1`;
//! only `H'` enters the formulas, so `H` itself is never formed.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{Center, Coeff, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// `H'` is a polynomial; coefficients past the stored ones vanish.
    Polynomial,
    /// Only the stored coefficients are known.
    Truncated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticProfile<C> {
    c: Vec<C>,
    kind: ProfileKind,
}

impl<C: Coeff> AsymptoticProfile<C> {
    /// `c[k-1] = H^{(k)}(1)`.
    pub fn new(c: Vec<C>, kind: ProfileKind) -> Self {
        AsymptoticProfile { c, kind }
    }

    /// `H' = 0`, the trivial sequence.
    pub fn trivial() -> Self {
        AsymptoticProfile::new(Vec::new(), ProfileKind::Polynomial)
    }

    /// Constant `H' = gamma`.
    pub fn constant(gamma: C) -> Self {
        AsymptoticProfile::new(alloc::vec![gamma], ProfileKind::Polynomial)
    }

    /// Profile with `H'(1 + t) = sum a_i t^i`.
    pub fn from_hprime_coeffs(a: &[C], kind: ProfileKind) -> Self {
        let mut fact = C::one();
        let c = a
            .iter()
            .enumerate()
            .map(|(i, ai)| {
                if i > 0 {
                    fact = fact.clone() * C::from_i64(i as i64);
                }
                ai.clone() * fact.clone()
            })
            .collect();
        AsymptoticProfile::new(c, kind)
    }

    pub fn coefficients(&self) -> &[C] {
        &self.c
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// `H'(1 + t)` through `t^order`.
    pub fn hprime(&self, order: usize) -> Result<TruncatedSeries<C>> {
        if self.kind == ProfileKind::Truncated && self.c.len() < order + 1 {
            return Err(Error::InsufficientOrder {
                needed: order + 1,
                available: self.c.len(),
            });
        }
        let mut fact = C::one();
        let coeffs = (0..=order)
            .map(|i| {
                if i > 0 {
                    fact = fact.clone() * C::from_i64(i as i64);
                }
                self.c
                    .get(i)
                    .cloned()
                    .map(|c| c / fact.clone())
                    .unwrap_or_else(C::zero)
            })
            .collect();
        TruncatedSeries::new(Center::One, coeffs)
    }

    fn check_order(&self, kmax: usize) -> Result<()> {
        if self.kind == ProfileKind::Truncated && self.c.len() < kmax {
            return Err(Error::InsufficientOrder {
                needed: kmax,
                available: self.c.len(),
            });
        }
        Ok(())
    }
}

/// Limit moments `m_k` of the counting measures and `d_k` of the difference measures.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentPair<C> {
    pub m: Vec<C>,
    pub d: Vec<C>,
}

pub fn moment_pair<C: Coeff>(p: &AsymptoticProfile<C>, kmax: usize) -> Result<MomentPair<C>> {
    Ok(MomentPair {
        m: m_moments(p, kmax)?,
        d: d_moments(p, kmax)?,
    })
}

fn binom<C: Coeff>(n: usize, k: usize) -> C {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    C::from_i64(acc as i64)
}

fn z_series<C: Coeff>(order: usize) -> TruncatedSeries<C> {
    TruncatedSeries::one(Center::One, order)
        .add(&TruncatedSeries::variable(Center::One, order))
        .expect("same center")
}

/// `[t^l] (z^k H'^(k-l))` for every `l <= k`, with `t = z - 1`.
fn derivative_terms<C: Coeff>(p: &AsymptoticProfile<C>, k: usize) -> Result<Vec<C>> {
    if k == 0 {
        return Ok(alloc::vec![C::one()]);
    }
    let order = k.max(1);
    let h = p.hprime(k.saturating_sub(1)).map(|h| {
        let mut c = h.coeffs().to_vec();
        c.resize(order + 1, C::zero());
        TruncatedSeries::new(Center::One, c).expect("nonempty")
    })?;
    let zk = z_series::<C>(order).powi(k as u32);
    Ok((0..=k)
        .map(|l| {
            zk.mul(&h.powi((k - l) as u32))
                .expect("same center")
                .coeff(l)
        })
        .collect())
}

/// `m_k = sum_l C(k,l)/(l+1) [t^l](z^k H'^(k-l))`, for `k = 0..=kmax`.
pub fn m_moments<C: Coeff>(p: &AsymptoticProfile<C>, kmax: usize) -> Result<Vec<C>> {
    p.check_order(kmax)?;
    (0..=kmax)
        .map(|k| {
            let terms = derivative_terms(p, k)?;
            Ok(terms
                .into_iter()
                .enumerate()
                .fold(C::zero(), |acc, (l, t)| {
                    acc + binom::<C>(k, l) * t / C::from_i64(l as i64 + 1)
                }))
        })
        .collect()
}

/// `d_k = sum_l C(k,l) [t^l](z^k H'^(k-l))`, for `k = 0..=kmax`.
pub fn d_moments<C: Coeff>(p: &AsymptoticProfile<C>, kmax: usize) -> Result<Vec<C>> {
    p.check_order(kmax)?;
    (0..=kmax)
        .map(|k| {
            let terms = derivative_terms(p, k)?;
            Ok(terms
                .into_iter()
                .enumerate()
                .fold(C::zero(), |acc, (l, t)| acc + binom::<C>(k, l) * t))
        })
        .collect()
}

/// `t (wH'(w) + w/(w-1))` as a series in `t = w - 1`.
fn contour_numerator<C: Coeff>(
    p: &AsymptoticProfile<C>,
    order: usize,
) -> Result<TruncatedSeries<C>> {
    let z = z_series::<C>(order);
    let mut hc = p.hprime(order.saturating_sub(1))?.coeffs().to_vec();
    hc.resize(order + 1, C::zero());
    let h = TruncatedSeries::new(Center::One, hc)?;
    let th = z.mul(&h)?.shift_up().truncate(order);
    z.add(&th)
}

/// Residue at `w = 1` of `(wH'(w) + w/(w-1))^(k+1) / ((k+1) w)`.
pub fn m_moments_contour<C: Coeff>(p: &AsymptoticProfile<C>, kmax: usize) -> Result<Vec<C>> {
    p.check_order(kmax)?;
    if kmax == 0 {
        return Ok(alloc::vec![C::one()]);
    }
    let order = kmax;
    let q = contour_numerator(p, order)?;
    let zinv = z_series::<C>(order).inverse()?;
    Ok((0..=kmax)
        .map(|k| {
            let s = q.powi(k as u32 + 1).mul(&zinv).expect("same center");
            s.coeff(k) / C::from_i64(k as i64 + 1)
        })
        .collect())
}

/// `d_k = [t^k] P(t)^k` with `P(t) = z + z t H'(z)`, `z = 1 + t`.
pub fn d_moments_contour<C: Coeff>(p: &AsymptoticProfile<C>, kmax: usize) -> Result<Vec<C>> {
    p.check_order(kmax)?;
    if kmax == 0 {
        return Ok(alloc::vec![C::one()]);
    }
    let order = kmax;
    let q = contour_numerator(p, order)?;
    Ok((0..=kmax).map(|k| q.powi(k as u32).coeff(k)).collect())
}

/// Both sides of `t(y) = exp(y F(y)) - 1`, where `t(y)` inverts `y = t / P(t)`
/// and `F` is the generating function of the `m_k`.
pub fn lagrange_sides<C: Coeff>(
    p: &AsymptoticProfile<C>,
    order: usize,
) -> Result<(TruncatedSeries<C>, TruncatedSeries<C>)> {
    if order == 0 {
        return Err(Error::InvalidParameter("order must be positive".into()));
    }
    let q = contour_numerator(p, order)?;
    let q0 = TruncatedSeries::new(Center::Zero, q.coeffs().to_vec())?;
    let y_of_t = q0.inverse()?.shift_up().truncate(order);
    let t_of_y = y_of_t.revert()?;
    let m = m_moments(p, order)?;
    let f = TruncatedSeries::new(Center::Zero, m)?;
    let rhs = f.shift_up().truncate(order).exp()?.add_constant(&-C::one());
    Ok((t_of_y, rhs))
}

/// Whether the two sides of [`lagrange_sides`] agree through `order`.
pub fn lagrange_check<C: Coeff>(p: &AsymptoticProfile<C>, order: usize) -> Result<bool> {
    let (a, b) = lagrange_sides(p, order)?;
    Ok(a.close_to(&b, 1e-9))
}

fn require_unit_mass<C: Coeff>(v: &[C]) -> Result<()> {
    match v.first() {
        None => Err(Error::InvalidSeries("no moments given".into())),
        Some(v0) if !v0.close_to(&C::one(), 1e-12) => {
            Err(Error::InvalidSeries("zeroth moment must be 1".into()))
        }
        _ => Ok(()),
    }
}

/// `d` from `m` through `sum_{k>=1} d_k z^k / k = log((exp(z F(z)) - 1) / z)`.
pub fn dmk_m_to_d<C: Coeff>(m: &[C]) -> Result<Vec<C>> {
    require_unit_mass(m)?;
    let kmax = m.len() - 1;
    let f = TruncatedSeries::new(Center::Zero, m.to_vec())?;
    let e = f.shift_up().exp()?.add_constant(&-C::one()).shift_down()?;
    let e = e.add_constant(&(C::one() - e.coeff(0)));
    let g = e.log()?;
    let mut d = alloc::vec![C::one()];
    d.extend((1..=kmax).map(|k| C::from_i64(k as i64) * g.coeff(k)));
    Ok(d)
}

/// `m` from `d` through `z F(z) = log(1 + z exp(G(z)))`.
pub fn dmk_d_to_m<C: Coeff>(d: &[C]) -> Result<Vec<C>> {
    require_unit_mass(d)?;
    let kmax = d.len() - 1;
    let mut gc = alloc::vec![C::zero()];
    gc.extend((1..=kmax).map(|k| d[k].clone() / C::from_i64(k as i64)));
    let g = TruncatedSeries::new(Center::Zero, gc)?;
    let zf = g.exp()?.shift_up().add_constant(&C::one()).log()?;
    Ok(zf.shift_down()?.coeffs().to_vec())
}

/// Exact rational profile convenience alias.
pub type RationalProfile = AsymptoticProfile<Rational>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn trivial_profile() {
        let p = RationalProfile::trivial();
        let m = m_moments(&p, 6).unwrap();
        let d = d_moments(&p, 6).unwrap();
        for k in 0..=6 {
            assert_eq!(m[k], rat(1, k as i64 + 1));
            assert_eq!(d[k], int(1));
        }
        assert_eq!(m_moments_contour(&p, 6).unwrap(), m);
        assert_eq!(d_moments_contour(&p, 6).unwrap(), d);
    }

    #[test]
    fn unit_constant_profile() {
        let p = RationalProfile::constant(int(1));
        assert_eq!(
            m_moments(&p, 2).unwrap(),
            alloc::vec![int(1), rat(3, 2), rat(10, 3)]
        );
        assert_eq!(
            d_moments(&p, 2).unwrap(),
            alloc::vec![int(1), int(2), int(6)]
        );
    }

    #[test]
    fn gamma_profile_low_moments() {
        let g = rat(2, 5);
        let p = RationalProfile::constant(g.clone());
        let m = m_moments(&p, 2).unwrap();
        let d = d_moments(&p, 2).unwrap();
        assert_eq!(m[1], &g + rat(1, 2));
        assert_eq!(m[2], &g * &g + int(2) * &g + rat(1, 3));
        assert_eq!(d[1], &g + int(1));
        assert_eq!(d[2], &g * &g + int(4) * &g + int(1));
        assert_eq!(dmk_m_to_d(&m).unwrap(), d);
        assert_eq!(dmk_d_to_m(&d).unwrap(), m);
    }

    #[test]
    fn truncated_order_and_errors() {
        let p = RationalProfile::new(alloc::vec![int(1), int(2)], ProfileKind::Truncated);
        assert!(m_moments(&p, 2).is_ok());
        assert!(matches!(
            m_moments(&p, 3),
            Err(Error::InsufficientOrder {
                needed: 3,
                available: 2
            })
        ));
        assert!(dmk_m_to_d(&[int(2), int(1)]).is_err());
        assert!(dmk_d_to_m::<Rational>(&[]).is_err());
    }

    #[test]
    fn lagrange_identity() {
        let p = RationalProfile::new(
            alloc::vec![rat(1, 2), int(-1), rat(3, 7)],
            ProfileKind::Polynomial,
        );
        assert!(lagrange_check(&p, 6).unwrap());
        let (a, _) = lagrange_sides(&p, 3).unwrap();
        assert_eq!(a.coeff(0), int(0));
    }

    #[test]
    fn float_coefficients() {
        let p = AsymptoticProfile::<f64>::constant(0.4);
        let m = m_moments(&p, 4).unwrap();
        let d = d_moments(&p, 4).unwrap();
        let d2 = dmk_m_to_d(&m).unwrap();
        for k in 0..=4 {
            assert!((d[k] - d2[k]).abs() < 1e-12);
        }
    }
}
