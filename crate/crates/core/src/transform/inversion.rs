use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::rfun::{FnR, RFunction};
use crate::error::{Error, Result};
use crate::grid::{DensityClass, DiagramClass, GridDensity, GridDiagram, Tolerance, UniformGrid};

/// Settings for recovering densities and diagrams from boundary values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversionConfig {
    /// Output grid intervals; `None` reuses the input grid size.
    pub intervals: Option<usize>,
    /// Number of `eta` levels `{d, 2d, 4d}` combined by Richardson extrapolation (1 to 3).
    pub eta_levels: usize,
    /// Smallest `eta` in units of the output grid spacing.
    pub eta_cells: f64,
    pub detect_atoms: bool,
    pub tolerance: Tolerance,
}

impl Default for InversionConfig {
    fn default() -> Self {
        InversionConfig {
            intervals: None,
            eta_levels: 3,
            eta_cells: 1.0,
            detect_atoms: true,
            tolerance: Tolerance::numerical(),
        }
    }
}

/// Diagnostics attached to every recovered object.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InversionReport {
    /// Total mass before normalization (densities only).
    pub raw_mass: f64,
    /// Smallest extrapolated nodal value before clamping.
    pub min_raw: f64,
    /// Largest extrapolated nodal value before clamping.
    pub max_raw: f64,
    /// `w(b) - |b - x0|` before the closing correction (diagrams only).
    pub closure: f64,
    pub atoms: Vec<(f64, f64)>,
    pub etas: Vec<f64>,
}

/// A recovered object together with its diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct Recovered<T> {
    pub value: T,
    pub report: InversionReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Readout {
    /// `-Im R / pi`.
    Density,
    /// `-arg(1 + R) / pi`.
    Bounded,
    /// `w' = 1 + 2 arg(R) / pi`.
    Slope,
}

const MAX_ATOMS: usize = 8;
const ATOM_MIN_MASS: f64 = 1e-4;

fn etas(h: f64, cfg: &InversionConfig) -> Result<Vec<f64>> {
    if !(1..=3).contains(&cfg.eta_levels) {
        return Err(Error::InvalidParameter(format!(
            "eta levels must be 1, 2 or 3, got {}",
            cfg.eta_levels
        )));
    }
    if !(cfg.eta_cells > 0.0) {
        return Err(Error::InvalidParameter("eta must be positive".into()));
    }
    Ok((0..cfg.eta_levels)
        .map(|i| cfg.eta_cells * h * (1u32 << i) as f64)
        .collect())
}

fn richardson(levels: &[Vec<f64>]) -> Vec<f64> {
    let n = levels[0].len();
    (0..n)
        .map(|k| match levels.len() {
            1 => levels[0][k],
            2 => 2.0 * levels[0][k] - levels[1][k],
            _ => (8.0 * levels[0][k] - 6.0 * levels[1][k] + levels[2][k]) / 3.0,
        })
        .collect()
}

fn atoms_term(atoms: &[(f64, f64)], u: Complex64) -> Complex64 {
    atoms.iter().map(|&(c, m)| m / (u - c)).sum()
}

/// Locate point masses: the strongest peak of `-eta Im R` is refined with
/// `c = Re(u - m/R)`, `m = eta / Im(1/R)` on a shrinking `eta` ladder and kept
/// if the mass estimate settles.
fn detect_atoms(rf: &dyn RFunction, out: &UniformGrid) -> Vec<(f64, f64)> {
    let (a, b) = rf.support();
    let h = out.spacing();
    let mut atoms: Vec<(f64, f64)> = Vec::new();
    for _ in 0..MAX_ATOMS {
        let vals = rf.eval_lattice(out, h);
        let (kmax, qmax) = vals
            .iter()
            .zip(out.points())
            .map(|(r, t)| -h * (r - atoms_term(&atoms, Complex64::new(t, h))).im)
            .enumerate()
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, (k, q)| if q > acc.1 { (k, q) } else { acc },
            );
        if !(qmax > 0.5 * ATOM_MIN_MASS) {
            break;
        }
        let mut c = out.point(kmax);
        let mut eta = h;
        let mut history: Vec<f64> = Vec::new();
        for _ in 0..10 {
            let u = Complex64::new(c, eta);
            let r = rf.eval(u) - atoms_term(&atoms, u);
            let inv = 1.0 / r;
            if !(inv.im > 0.0) || !inv.im.is_finite() {
                break;
            }
            let m = eta / inv.im;
            c = (u - m * inv).re.clamp(a, b);
            history.push(m);
            eta *= 0.25;
        }
        let n = history.len();
        let settled = n >= 6 && {
            let (m1, m2) = (history[n - 1], history[n - 2]);
            m1 > ATOM_MIN_MASS && m1 <= 1.0 + 1e-6 && (m1 - m2).abs() <= 1e-3 * m1
        };
        if !settled {
            break;
        }
        atoms.push((c, history[n - 1]));
    }
    atoms
}

/// Extrapolated readout at the nodes of `out`, with atoms removed first.
pub(crate) fn boundary_values(
    rf: &dyn RFunction,
    out: &UniformGrid,
    readout: Readout,
    atoms: &[(f64, f64)],
    cfg: &InversionConfig,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let etas = etas(out.spacing(), cfg)?;
    let mut levels = Vec::with_capacity(etas.len());
    for (i, &eta) in etas.iter().enumerate() {
        let vals = rf.eval_lattice(out, eta);
        let mut level = Vec::with_capacity(vals.len());
        for (r, t) in vals.into_iter().zip(out.points()) {
            let u = Complex64::new(t, eta);
            let r = r - atoms_term(atoms, u);
            if !(r.re.is_finite() && r.im.is_finite()) {
                return Err(Error::NotPositive(format!("R is not finite at {u}")));
            }
            let (v, bad) = match readout {
                Readout::Density => (-r.im / PI, -r.im < -1e-8 * (1.0 + r.norm())),
                Readout::Bounded => {
                    let z = 1.0 + r;
                    (-lower_arg(z) / PI, z.im > 1e-8 * z.norm())
                }
                Readout::Slope => (1.0 + 2.0 * lower_arg(r) / PI, r.im > 1e-8 * r.norm()),
            };
            if i == 0 && bad {
                return Err(Error::NotPositive(format!(
                    "boundary value at t = {t} has the wrong sign"
                )));
            }
            level.push(v);
        }
        levels.push(level);
    }
    Ok((richardson(&levels), etas))
}

/// Argument in `[-pi, 0]`; rounding noise above the real axis is folded onto it.
fn lower_arg(z: Complex64) -> f64 {
    let im = if z.im > 0.0 { -0.0 } else { z.im };
    libm::atan2(im, z.re)
}

fn report_range(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| {
            (l.min(x), h.max(x))
        })
}

/// Recover a probability density (with atoms) or a bounded density from `R`.
pub(crate) fn recover_density(
    rf: &dyn RFunction,
    out: &UniformGrid,
    readout: Readout,
    class: DensityClass,
    cfg: &InversionConfig,
) -> Result<Recovered<GridDensity>> {
    let atoms = if readout == Readout::Density && cfg.detect_atoms {
        detect_atoms(rf, out)
    } else {
        Vec::new()
    };
    let (mut v, etas) = boundary_values(rf, out, readout, &atoms, cfg)?;
    let (min_raw, max_raw) = report_range(&v);
    let cap = if readout == Readout::Bounded {
        1.0
    } else {
        f64::INFINITY
    };
    for x in v.iter_mut() {
        *x = x.clamp(0.0, cap);
    }
    let atom_mass: f64 = atoms.iter().map(|a| a.1).sum();
    let cont = out.trapezoid(&v);
    let raw_mass = cont + atom_mass;
    if (raw_mass - 1.0).abs() > 50.0 * cfg.tolerance.mass {
        return Err(Error::NotPositive(format!(
            "recovered mass {raw_mass} is far from 1"
        )));
    }
    let mut atoms = atoms;
    if cont <= 1e-9 {
        v.iter_mut().for_each(|x| *x = 0.0);
        atoms.iter_mut().for_each(|a| a.1 /= atom_mass);
    } else {
        normalize(&mut v, out, 1.0 - atom_mass.min(1.0), cap);
    }
    let value =
        GridDensity::with_atoms(out.lo(), out.hi(), v, atoms.clone(), class, cfg.tolerance)?;
    Ok(Recovered {
        value,
        report: InversionReport {
            raw_mass,
            min_raw,
            max_raw,
            closure: 0.0,
            atoms,
            etas,
        },
    })
}

/// Scale unsaturated values so that the trapezoid mass equals `target`.
fn normalize(v: &mut [f64], g: &UniformGrid, target: f64, cap: f64) {
    for _ in 0..20 {
        let free: Vec<f64> = v.iter().map(|&x| if x < cap { x } else { 0.0 }).collect();
        let sat: Vec<f64> = v.iter().map(|&x| if x < cap { 0.0 } else { x }).collect();
        let fm = g.trapezoid(&free);
        let sm = g.trapezoid(&sat);
        if fm <= 0.0 {
            return;
        }
        let s = (target - sm) / fm;
        let mut clipped = false;
        for x in v.iter_mut() {
            if *x < cap {
                *x *= s;
                if *x > cap {
                    *x = cap;
                    clipped = true;
                }
            }
        }
        if !clipped {
            return;
        }
    }
}

/// Recover a diagram from `R`: integrate `w' = 1 + 2 arg R(t + i0) / pi` from `w(a) = |a - x0|`.
pub(crate) fn recover_diagram(
    rf: &dyn RFunction,
    out: &UniformGrid,
    class: DiagramClass,
    cfg: &InversionConfig,
) -> Result<Recovered<GridDiagram>> {
    let x0 = rf.center();
    let (a, b) = (out.lo(), out.hi());
    let (mut slope, etas) = boundary_values(rf, out, Readout::Slope, &[], cfg)?;
    let (min_raw, max_raw) = report_range(&slope);
    for s in slope.iter_mut() {
        *s = s.clamp(-1.0, 1.0);
    }
    let integral = out.cumulative_trapezoid(&slope);
    let wa = (a - x0).abs();
    let closure = wa + integral[integral.len() - 1] - (b - x0).abs();
    if closure.abs() > 0.05 * (b - a) {
        return Err(Error::OutsideDomain(format!(
            "recovered diagram does not close ({closure})"
        )));
    }
    let values = out
        .points()
        .iter()
        .zip(&integral)
        .map(|(t, i)| wa + i - closure * (t - a) / (b - a))
        .collect();
    let value = GridDiagram::with_tolerance(a, b, x0, *out, values, class, cfg.tolerance)?;
    Ok(Recovered {
        value,
        report: InversionReport {
            raw_mass: f64::NAN,
            min_raw,
            max_raw,
            closure,
            atoms: Vec::new(),
            etas,
        },
    })
}

/// Density of the measure whose Cauchy transform is `f`, i.e. `-Im f(t + i0) / pi`,
/// with point masses reported as atoms.
pub fn stieltjes_invert<F: Fn(Complex64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    intervals: usize,
    cfg: &InversionConfig,
) -> Result<Recovered<GridDensity>> {
    let out = UniformGrid::new(a, b, intervals)?;
    let rf = FnR {
        f,
        a,
        b,
        center: 0.5 * (a + b),
    };
    recover_density(&rf, &out, Readout::Density, DensityClass::Probability, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interior_sup(d: &GridDensity, exact: impl Fn(f64) -> f64) -> f64 {
        let (a, b) = (d.a(), d.b());
        let band = 0.02 * (b - a);
        d.grid()
            .points()
            .iter()
            .zip(d.values())
            .filter(|(t, _)| **t > a + band && **t < b - band)
            .map(|(t, v)| (v - exact(*t)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn uniform_from_log() {
        let cfg = InversionConfig::default();
        let r = stieltjes_invert(|u| (u / (u - 1.0)).ln(), 0.0, 1.0, 2000, &cfg).unwrap();
        assert!(interior_sup(&r.value, |_| 1.0) < 5e-3);
        assert!(r.value.atoms().is_empty());
        assert!((r.value.mass() - 1.0).abs() < 1e-9);
        assert!((r.report.raw_mass - 1.0).abs() < 1e-3);
    }

    #[test]
    fn point_mass_is_reported_as_atom() {
        let cfg = InversionConfig::default();
        let r = stieltjes_invert(|u| 1.0 / (u - 0.3), 0.0, 1.0, 500, &cfg).unwrap();
        assert_eq!(r.value.atoms().len(), 1);
        let (c, m) = r.value.atoms()[0];
        assert!((c - 0.3).abs() < 1e-6 && (m - 1.0).abs() < 1e-6);
        assert!(r.value.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn rejects_negative_measures() {
        let cfg = InversionConfig::default();
        let r = stieltjes_invert(|u| -(u / (u - 1.0)).ln(), 0.0, 1.0, 200, &cfg);
        assert!(matches!(r, Err(Error::NotPositive(_))));
        let bad = InversionConfig {
            eta_levels: 4,
            ..cfg
        };
        assert!(stieltjes_invert(|u| 1.0 / u, 0.0, 1.0, 200, &bad).is_err());
    }
}
