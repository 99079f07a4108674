//! Rectangular (interlacing) diagrams and power sums of diagrams.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::grid::{DiagramClass, GridDiagram, UniformGrid};
use crate::measure::{Moments, SignedAtomicMeasure};
use crate::rational::{int, pow, rat, to_f64, Rational};
use crate::signature::InterlacingPair;

/// Piecewise-linear diagram with minima `x_1 < ... < x_N` and maxima `y_1..y_{N-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangularDiagram {
    x: Vec<Rational>,
    y: Vec<Rational>,
    z0: Rational,
}

/// Validate `x_1 <= y_1 <= x_2 <= ... <= y_{N-1} <= x_N` with strictly increasing `x`.
pub fn build_rectangular_diagram(x: Vec<Rational>, y: Vec<Rational>) -> Result<RectangularDiagram> {
    if x.is_empty() {
        return Err(Error::InvalidDiagram("no minima".into()));
    }
    if y.len() + 1 != x.len() {
        return Err(Error::LengthMismatch {
            expected: x.len() - 1,
            found: y.len(),
        });
    }
    if x.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidDiagram(
            "minima must strictly increase".into(),
        ));
    }
    for (i, yi) in y.iter().enumerate() {
        if yi < &x[i] || yi > &x[i + 1] {
            return Err(Error::NotInterlacing);
        }
    }
    let z0 = x.iter().sum::<Rational>() - y.iter().sum::<Rational>();
    Ok(RectangularDiagram { x, y, z0 })
}

impl RectangularDiagram {
    /// Diagram of a pair in the scaled coordinates of its difference measure.
    pub fn from_pair(pair: &InterlacingPair) -> Self {
        let n = pair.n() as i64;
        let mut x: Vec<Rational> = pair
            .upper()
            .shifted()
            .into_iter()
            .map(|l| rat(l, n))
            .collect();
        let mut y: Vec<Rational> = pair
            .lower()
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &m)| rat(m + n - 2 - i as i64, n))
            .collect();
        x.reverse();
        y.reverse();
        build_rectangular_diagram(x, y).expect("interlacing pairs give valid diagrams")
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn y(&self) -> &[Rational] {
        &self.y
    }

    pub fn z0(&self) -> Rational {
        self.z0.clone()
    }

    fn breakpoints(&self) -> Vec<Rational> {
        let mut p = Vec::with_capacity(2 * self.x.len() - 1);
        for i in 0..self.x.len() {
            p.push(self.x[i].clone());
            if i < self.y.len() {
                p.push(self.y[i].clone());
            }
        }
        p
    }

    /// Exact value of the diagram at `t`.
    pub fn eval(&self, t: &Rational) -> Rational {
        let p = self.breakpoints();
        if t <= &p[0] {
            return (&self.z0 - t).abs();
        }
        let mut w = &self.z0 - &p[0];
        for (j, seg) in p.windows(2).enumerate() {
            let slope = if j % 2 == 0 { int(1) } else { int(-1) };
            if t <= &seg[1] {
                return w + slope * (t - &seg[0]);
            }
            w += slope * (&seg[1] - &seg[0]);
        }
        w + (t - &p[p.len() - 1])
    }

    /// The signed measure `w''/2`: unit atoms at minima, negative unit atoms at maxima.
    pub fn corners(&self) -> SignedAtomicMeasure {
        let p = self.breakpoints();
        let last = p.len() - 1;
        let atoms = p
            .into_iter()
            .enumerate()
            .map(|(j, t)| {
                let left = if j % 2 == 1 { 1 } else { -1 };
                let right = if j == last || j % 2 == 0 { 1 } else { -1 };
                (t, rat(right - left, 2))
            })
            .collect();
        SignedAtomicMeasure::new(atoms)
    }

    /// Exact samples on a grid, as a member of `D[x_1, x_N]`.
    pub fn sample(&self, grid: UniformGrid) -> Result<GridDiagram> {
        let values = grid
            .points()
            .iter()
            .map(|&t| to_f64(&self.eval(&crate::rational::from_f64(t).expect("finite node"))))
            .collect();
        GridDiagram::new(
            to_f64(&self.x[0]),
            to_f64(&self.x[self.x.len() - 1]),
            to_f64(&self.z0),
            grid,
            values,
            DiagramClass::Diagram,
        )
    }
}

/// `p_k` of a rectangular diagram: the `k`-th moment of `w''/2`.
pub fn p_k_rectangular(d: &RectangularDiagram, k: u32) -> Rational {
    d.corners().moment(k)
}

/// `p_k = x0^k + k(k-1)/2 * int t^(k-2) (w(t) - |t - x0|) dt` by the trapezoid rule.
pub fn p_k_grid(w: &GridDiagram, k: u32) -> f64 {
    let x0 = w.x0();
    if k < 2 {
        return if k == 0 { 1.0 } else { x0 };
    }
    let g = w.grid();
    let f: Vec<f64> = g
        .points()
        .iter()
        .zip(w.sigma())
        .map(|(t, s)| 2.0 * s * libm::pow(*t, (k - 2) as f64))
        .collect();
    libm::pow(x0, k as f64) + 0.5 * (k * (k - 1)) as f64 * g.trapezoid(&f)
}

/// `sum x_i^k - sum y_i^k`, the closed form of [`p_k_rectangular`].
pub fn power_sum_difference(d: &RectangularDiagram, k: u32) -> Rational {
    let sx: Rational = d.x.iter().map(|v| pow(v, k)).sum();
    let sy: Rational = d.y.iter().map(|v| pow(v, k)).sum();
    let r = sx - sy;
    if r.is_zero() {
        Rational::zero()
    } else {
        r
    }
}
