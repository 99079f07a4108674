use alloc::vec::Vec;

use num_complex::Complex64;

use super::cauchy::{cauchy_linear, cauchy_linear_lattice, cauchy_slopes_lattice};
use super::{edge_point, ProbePoint};
use crate::error::Result;
use crate::grid::{GridDensity, GridDiagram, UniformGrid};

/// A holomorphic function off `[a, b]` with `R(u) = 1/u + center/u^2 + O(u^-3)`.
pub trait RFunction {
    fn support(&self) -> (f64, f64);

    fn eval(&self, u: Complex64) -> Complex64;

    /// Values at `t_k + i eta` for every node of `out`.
    fn eval_lattice(&self, out: &UniformGrid, eta: f64) -> Vec<Complex64> {
        out.points()
            .into_iter()
            .map(|t| self.eval(Complex64::new(t, eta)))
            .collect()
    }

    fn center(&self) -> f64;
}

fn atoms_term(atoms: &[(f64, f64)], u: Complex64) -> Complex64 {
    atoms.iter().map(|&(c, m)| m / (u - c)).sum()
}

/// `R_mu`: the Cauchy transform of a probability measure.
pub struct MuR<'a>(pub &'a GridDensity);

impl RFunction for MuR<'_> {
    fn support(&self) -> (f64, f64) {
        (self.0.a(), self.0.b())
    }

    fn eval(&self, u: Complex64) -> Complex64 {
        cauchy_linear(self.0.grid(), self.0.values(), u) + atoms_term(self.0.atoms(), u)
    }

    fn eval_lattice(&self, out: &UniformGrid, eta: f64) -> Vec<Complex64> {
        let g = self.0.grid();
        match cauchy_linear_lattice(g, self.0.values(), out, eta) {
            Some(v) => v
                .into_iter()
                .zip(out.points())
                .map(|(r, t)| r + atoms_term(self.0.atoms(), Complex64::new(t, eta)))
                .collect(),
            None => out
                .points()
                .into_iter()
                .map(|t| self.eval(Complex64::new(t, eta)))
                .collect(),
        }
    }

    fn center(&self) -> f64 {
        self.0.moment(1)
    }
}

/// `R_psi = -1 + exp(int dpsi(t) / (u - t))`.
pub struct PsiR<'a>(pub &'a GridDensity);

impl RFunction for PsiR<'_> {
    fn support(&self) -> (f64, f64) {
        (self.0.a(), self.0.b())
    }

    fn eval(&self, u: Complex64) -> Complex64 {
        MuR(self.0).eval(u).exp() - 1.0
    }

    fn eval_lattice(&self, out: &UniformGrid, eta: f64) -> Vec<Complex64> {
        MuR(self.0)
            .eval_lattice(out, eta)
            .into_iter()
            .map(|g| g.exp() - 1.0)
            .collect()
    }

    fn center(&self) -> f64 {
        self.0.moment(1) + 0.5
    }
}

/// `R_w = exp(int tau'(t) / (t - u) dt) / (u - x0)` with `tau = (w - |t - x0|) / 2`.
///
/// `w` is taken piecewise linear through `a`, the grid nodes strictly inside
/// `(a, b)`, and `b`, with the exact values `|a - x0|` and `|b - x0|` at the ends.
pub struct DiagramR<'a> {
    w: &'a GridDiagram,
    breaks: Vec<f64>,
    values: Vec<f64>,
    uniform: Option<UniformGrid>,
}

impl<'a> DiagramR<'a> {
    pub fn new(w: &'a GridDiagram) -> Self {
        let (a, b, x0) = (w.a(), w.b(), w.x0());
        let g = w.grid();
        let h = g.spacing();
        let mut breaks = alloc::vec![a];
        let mut values = alloc::vec![(a - x0).abs()];
        let mut aligned = true;
        if b > a {
            for (t, &v) in g.points().into_iter().zip(w.values()) {
                if t > a + 1e-9 * h && t < b - 1e-9 * h {
                    breaks.push(t);
                    values.push(v);
                } else if (t - a).abs() <= 1e-9 * h || (t - b).abs() <= 1e-9 * h {
                    continue;
                }
            }
            let on_node = |x: f64| {
                let s = (x - g.lo()) / h;
                (s - libm::round(s)).abs() <= 1e-9
            };
            aligned = on_node(a) && on_node(b);
            breaks.push(b);
            values.push((b - x0).abs());
        }
        let uniform = if aligned && breaks.len() >= 2 {
            UniformGrid::new(a, b, breaks.len() - 1).ok()
        } else {
            None
        };
        DiagramR {
            w,
            breaks,
            values,
            uniform,
        }
    }

    /// `int_a^b sgn(t - x0) / (t - u) dt`.
    fn kink_term(&self, u: Complex64) -> Complex64 {
        let (a, b, x0) = (self.w.a(), self.w.b(), self.w.x0());
        let l = |x: f64| (Complex64::new(x, 0.0) - u).ln();
        (l(b) - l(x0)) - (l(x0) - l(a))
    }

    fn finish(&self, k: Complex64, u: Complex64) -> Complex64 {
        // int w'/(t-u) = -k
        let e = -0.5 * k - 0.5 * self.kink_term(u);
        e.exp() / (u - self.w.x0())
    }

    fn slope_integral(&self, u: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in 0..self.breaks.len().saturating_sub(1) {
            let len = self.breaks[c + 1] - self.breaks[c];
            if len <= 0.0 {
                continue;
            }
            let s = (self.values[c + 1] - self.values[c]) / len;
            if s != 0.0 {
                acc +=
                    s * super::cauchy::log1p_c(Complex64::new(len, 0.0) / (u - self.breaks[c + 1]));
            }
        }
        acc
    }
}

impl RFunction for DiagramR<'_> {
    fn support(&self) -> (f64, f64) {
        (self.w.a(), self.w.b())
    }

    fn eval(&self, u: Complex64) -> Complex64 {
        if self.breaks.len() < 2 {
            return 1.0 / (u - self.w.x0());
        }
        self.finish(self.slope_integral(u), u)
    }

    fn eval_lattice(&self, out: &UniformGrid, eta: f64) -> Vec<Complex64> {
        if let Some(g) = &self.uniform {
            if let Some(ks) = cauchy_slopes_lattice(g, &self.values, out, eta) {
                return ks
                    .into_iter()
                    .zip(out.points())
                    .map(|(k, t)| self.finish(k, Complex64::new(t, eta)))
                    .collect();
            }
        }
        out.points()
            .into_iter()
            .map(|t| self.eval(Complex64::new(t, eta)))
            .collect()
    }

    fn center(&self) -> f64 {
        self.w.x0()
    }
}

/// A caller-supplied R-function on `[a, b]`.
pub struct FnR<F> {
    pub f: F,
    pub a: f64,
    pub b: f64,
    pub center: f64,
}

impl<F: Fn(Complex64) -> Complex64> RFunction for FnR<F> {
    fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    fn eval(&self, u: Complex64) -> Complex64 {
        (self.f)(u)
    }

    fn center(&self) -> f64 {
        self.center
    }
}

/// `int psi(t) / (u - t) dt`, exact for the piecewise-linear interpolant of the grid values.
pub fn cauchy_g(psi: &GridDensity, u: ProbePoint) -> Result<Complex64> {
    let u = u.check(psi.a(), psi.b())?;
    Ok(MuR(psi).eval(u))
}

/// [`cauchy_g`] with an error estimate from comparison against every other node.
pub fn cauchy_g_estimate(psi: &GridDensity, u: ProbePoint) -> Result<(Complex64, f64)> {
    let v = cauchy_g(psi, u)?;
    let m = psi.grid().intervals();
    if m < 4 || m % 2 == 1 {
        return Ok((v, f64::NAN));
    }
    let coarse = UniformGrid::new(psi.a(), psi.b(), m / 2)?;
    let cv: Vec<f64> = psi.values().iter().step_by(2).cloned().collect();
    let c = cauchy_linear(&coarse, &cv, u.value()) + atoms_term(psi.atoms(), u.value());
    Ok((v, (v - c).norm() / 3.0))
}

pub fn r_mu(mu: &GridDensity, u: ProbePoint) -> Result<Complex64> {
    cauchy_g(mu, u)
}

pub fn r_psi(psi: &GridDensity, u: ProbePoint) -> Result<Complex64> {
    let u = u.check(psi.a(), psi.b())?;
    Ok(PsiR(psi).eval(u))
}

pub fn r_w(w: &GridDiagram, u: ProbePoint) -> Result<Complex64> {
    let z = u.check(w.a(), w.b())?;
    if z == Complex64::new(w.x0(), 0.0) {
        return Err(crate::error::Error::ProbeOnSupport);
    }
    Ok(DiagramR::new(w).eval(z))
}

/// `max |R1(u) - R2(u)|` over the probes.
pub fn probe_defect(r1: &dyn RFunction, r2: &dyn RFunction, probes: &[ProbePoint]) -> f64 {
    probes
        .iter()
        .map(|p| (r1.eval(p.value()) - r2.eval(p.value())).norm())
        .fold(0.0, f64::max)
}

/// `R_w` one grid cell left of `a`, the left limit used by the quantizability check.
pub(crate) fn left_limit_r_w(w: &GridDiagram) -> f64 {
    let u = edge_point(w.a(), w.grid().spacing());
    DiagramR::new(w).eval(Complex64::new(u, 0.0)).re
}
