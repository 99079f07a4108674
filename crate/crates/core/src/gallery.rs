//! Closed-form reference densities and diagrams.

use alloc::format;

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::{DensityClass, DiagramClass, GridDensity, GridDiagram, Tolerance, UniformGrid};
use crate::transform::SemiclassicalFamily;

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "gamma must be positive, got {gamma}"
        )))
    }
}

fn acos_clamped(r: f64) -> f64 {
    libm::acos(r.clamp(-1.0, 1.0))
}

fn asin_clamped(r: f64) -> f64 {
    libm::asin(r.clamp(-1.0, 1.0))
}

/// Support `[lo, hi]` of the one-sided Plancherel density; `lo = -1` when `gamma < 1`.
pub fn plancherel_support(gamma: f64) -> (f64, f64) {
    let s = libm::sqrt(gamma);
    let lo = gamma - 2.0 * s;
    (if gamma < 1.0 { -1.0 } else { lo }, gamma + 2.0 * s)
}

/// `(1/pi) arccos((x + gamma) / (2 sqrt(gamma (x + 1))))` between the soft edges,
/// saturated at 1 on `[-1, gamma - 2 sqrt(gamma)]` when `gamma < 1`.
pub fn plancherel_psi_value(gamma: f64, x: f64) -> f64 {
    let s = libm::sqrt(gamma);
    let (lo, hi) = (gamma - 2.0 * s, gamma + 2.0 * s);
    if x >= hi {
        return 0.0;
    }
    if x <= lo {
        return match gamma {
            g if g < 1.0 && x >= -1.0 => 1.0,
            g if g == 1.0 && x == -1.0 => 0.5,
            _ => 0.0,
        };
    }
    let r = (x + gamma) / (2.0 * libm::sqrt(gamma * (x + 1.0)));
    acos_clamped(r) / PI
}

/// `(2/pi) ((x - gamma) arcsin((x - gamma)/(2 sqrt gamma)) + sqrt(4 gamma - (x - gamma)^2))`,
/// continued by `|x - gamma|`.
pub fn plancherel_w_value(gamma: f64, x: f64) -> f64 {
    let s = libm::sqrt(gamma);
    let v = x - gamma;
    if v.abs() >= 2.0 * s {
        return v.abs();
    }
    2.0 / PI * (v * asin_clamped(v / (2.0 * s)) + libm::sqrt((4.0 * gamma - v * v).max(0.0)))
}

/// Corner of the Plancherel diagram outside its support.
pub fn plancherel_x0(gamma: f64) -> f64 {
    gamma
}

pub fn plancherel_psi(gamma: f64, intervals: usize) -> Result<GridDensity> {
    check_gamma(gamma)?;
    let (a, b) = plancherel_support(gamma);
    GridDensity::with_atoms(
        a,
        b,
        UniformGrid::new(a, b, intervals)?
            .points()
            .into_iter()
            .map(|x| plancherel_psi_value(gamma, x))
            .collect(),
        alloc::vec::Vec::new(),
        DensityClass::Bounded,
        Tolerance::numerical(),
    )
}

/// The Plancherel diagram on the support of [`plancherel_psi`].
pub fn plancherel_w(gamma: f64, intervals: usize) -> Result<GridDiagram> {
    check_gamma(gamma)?;
    let (a, b) = plancherel_support(gamma);
    let grid = UniformGrid::new(a, b, intervals)?;
    GridDiagram::from_fn(
        a,
        b,
        plancherel_x0(gamma),
        grid,
        DiagramClass::Quantizable,
        |x| plancherel_w_value(gamma, x),
    )
}

pub fn vkls_value(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        return x.abs();
    }
    2.0 / PI * (x * asin_clamped(x / 2.0) + libm::sqrt((4.0 - x * x).max(0.0)))
}

pub fn semicircle_value(x: f64) -> f64 {
    libm::sqrt((4.0 - x * x).max(0.0)) / (2.0 * PI)
}

/// The Vershik-Kerov-Logan-Shepp curve on `[-2, 2]`.
pub fn vkls_curve(intervals: usize) -> Result<GridDiagram> {
    let grid = UniformGrid::new(-2.0, 2.0, intervals)?;
    GridDiagram::from_fn(-2.0, 2.0, 0.0, grid, DiagramClass::Diagram, vkls_value)
}

pub fn semicircle(intervals: usize) -> Result<GridDensity> {
    GridDensity::with_atoms(
        -2.0,
        2.0,
        UniformGrid::new(-2.0, 2.0, intervals)?
            .points()
            .into_iter()
            .map(semicircle_value)
            .collect(),
        alloc::vec::Vec::new(),
        DensityClass::Probability,
        Tolerance::numerical(),
    )
}

/// Uniform density on `[0, 1]` and its diagram `|x - 1|`.
pub fn trivial_pair(intervals: usize) -> Result<(GridDensity, GridDiagram)> {
    let psi = GridDensity::from_fn(0.0, 1.0, intervals, DensityClass::Bounded, |_| 1.0)?;
    let grid = UniformGrid::new(0.0, 1.0, intervals)?;
    let w = GridDiagram::from_fn(0.0, 1.0, 1.0, grid, DiagramClass::Quantizable, |x| {
        (x - 1.0).abs()
    })?;
    Ok((psi, w))
}

/// Plancherel family with `gamma = 1/eps^2`, recentred at the origin, so that
/// `psi_eps` lives on `[-2/eps, 2/eps]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CenteredPlancherel {
    pub intervals: usize,
}

impl CenteredPlancherel {
    fn gamma(eps: f64) -> Result<f64> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "eps must lie in (0, 1], got {eps}"
            )));
        }
        Ok(1.0 / (eps * eps))
    }
}

impl SemiclassicalFamily for CenteredPlancherel {
    fn support(&self) -> (f64, f64) {
        (-2.0, 2.0)
    }

    fn psi(&self, eps: f64) -> Result<GridDensity> {
        let g = Self::gamma(eps)?;
        let r = 2.0 / eps;
        GridDensity::with_atoms(
            -r,
            r,
            UniformGrid::new(-r, r, self.intervals)?
                .points()
                .into_iter()
                .map(|s| plancherel_psi_value(g, s + g))
                .collect(),
            alloc::vec::Vec::new(),
            DensityClass::Bounded,
            Tolerance::numerical(),
        )
    }

    fn w(&self, eps: f64) -> Result<GridDiagram> {
        let g = Self::gamma(eps)?;
        let r = 2.0 / eps;
        let grid = UniformGrid::new(-r, r, self.intervals)?;
        GridDiagram::from_fn(-r, r, 0.0, grid, DiagramClass::Quantizable, |s| {
            plancherel_w_value(g, s + g)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson after `x = c + r sin(theta)`, which tames square-root edges.
    fn smooth_quad(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let (c, r) = ((a + b) / 2.0, (b - a) / 2.0);
        let g = |th: f64| f(c + r * libm::sin(th)) * r * libm::cos(th);
        let h = PI / n as f64;
        let mut s = g(-PI / 2.0) + g(PI / 2.0);
        for j in 1..n {
            s += g(-PI / 2.0 + j as f64 * h) * if j % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn plancherel_mass_and_edges() {
        for gamma in [0.5, 1.0, 1.5, 2.5] {
            let (a, b) = plancherel_support(gamma);
            let lo = gamma - 2.0 * libm::sqrt(gamma);
            let mut mass = smooth_quad(|x| plancherel_psi_value(gamma, x), lo, b, 4000);
            if gamma < 1.0 {
                mass += lo - a;
            }
            assert!((mass - 1.0).abs() < 1e-6, "gamma {gamma}: {mass}");
            assert_eq!(plancherel_psi_value(gamma, b), 0.0);
            let left = plancherel_psi_value(gamma, lo);
            assert!(left == 0.0 || left == 1.0 || (gamma == 1.0 && left == 0.5));
            assert!(plancherel_psi(gamma, 2000).is_ok());
        }
        assert_eq!(plancherel_psi_value(0.5, 0.5 - 2.0 * libm::sqrt(0.5)), 1.0);
        assert_eq!(plancherel_psi_value(2.5, 2.5 - 2.0 * libm::sqrt(2.5)), 0.0);
        assert_eq!(plancherel_support(1.0), (-1.0, 3.0));
        assert!(plancherel_psi(0.0, 100).is_err());
        assert!(plancherel_w(-1.0, 100).is_err());
    }

    #[test]
    fn plancherel_w_values() {
        for gamma in [0.5, 1.0, 2.5] {
            let s = libm::sqrt(gamma);
            assert!((plancherel_w_value(gamma, gamma) - 4.0 * s / PI).abs() < 1e-14);
            assert!((plancherel_w_value(gamma, gamma - 2.0 * s) - 2.0 * s).abs() < 1e-14);
            assert!((plancherel_w_value(gamma, gamma + 2.0 * s) - 2.0 * s).abs() < 1e-14);
            let w = plancherel_w(gamma, 4000).unwrap();
            assert!((crate::diagram::p_k_grid(&w, 1) - gamma).abs() < 1e-4);
        }
    }

    #[test]
    fn classical_pair() {
        assert!((vkls_value(2.0) - 2.0).abs() < 1e-15);
        assert!((vkls_value(-2.0) - 2.0).abs() < 1e-15);
        assert!((vkls_value(0.0) - 4.0 / PI).abs() < 1e-15);
        let m = smooth_quad(semicircle_value, -2.0, 2.0, 200);
        assert!((m - 1.0).abs() < 1e-10);
        assert!(semicircle(1000).is_ok() && vkls_curve(1000).is_ok());
    }

    #[test]
    fn centered_family() {
        let f = CenteredPlancherel { intervals: 800 };
        for eps in [1.0, 0.5, 0.25] {
            let (psi, w) = (f.psi(eps).unwrap(), f.w(eps).unwrap());
            assert!((psi.a() - w.a()).abs() < 1e-12);
            assert!((psi.mass() - 1.0).abs() < 1e-3);
        }
        assert!(f.psi(0.0).is_err());
    }
}
