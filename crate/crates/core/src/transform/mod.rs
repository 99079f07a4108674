//! R-functions of densities and diagrams, Stieltjes inversion, and the
//! Markov-Krein and quantized Markov-Krein maps between them.
//!
//! Public convention: `R_mu(u) = int dmu(t) / (u - t)`, so a positive measure
//! has `Im R < 0` in the upper half plane and density `-Im R(t + i0) / pi`.

mod cauchy;
mod inversion;
mod maps;
mod membership;
mod rfun;
mod semiclassical;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use inversion::{stieltjes_invert, InversionConfig, InversionReport, Recovered};
pub use maps::{dequantize, mk_mu_to_w, mk_w_to_mu, qmk_psi_to_w, qmk_w_to_psi, quantize};
pub use membership::{membership_checks, Check, Member, MembershipReport};
pub use rfun::{
    cauchy_g, cauchy_g_estimate, probe_defect, r_mu, r_psi, r_w, DiagramR, FnR, MuR, PsiR,
    RFunction,
};
pub use semiclassical::{
    classical_defect, rescaled_pair, semiclassical_rescale, SemiclassicalFamily,
};

pub(crate) use rfun::left_limit_r_w;

/// Allowed undershoot of `R(a-) > -1` in domain checks; genuine violations diverge to `-inf`.
pub const DOMAIN_TOLERANCE: f64 = 1e-2;

/// Point at which the limit `R(a-)` of a grid object with spacing `h` is read.
/// `R` is monotone on `(-inf, a)`; closer than one cell the piecewise-linear
/// model's own edge behaviour dominates.
pub fn edge_point(a: f64, h: f64) -> f64 {
    a - h
}

/// A point where R-functions are evaluated: off the real axis, or real outside the support.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbePoint(pub Complex64);

impl ProbePoint {
    pub fn new(re: f64, im: f64) -> Self {
        ProbePoint(Complex64::new(re, im))
    }

    pub fn real(x: f64) -> Self {
        ProbePoint(Complex64::new(x, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    /// The probe as a complex number, rejected if it lies on `[a, b]`.
    pub fn check(&self, a: f64, b: f64) -> Result<Complex64> {
        let u = self.0;
        if !(u.re.is_finite() && u.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite probe".into()));
        }
        if u.im == 0.0 && u.re >= a && u.re <= b {
            return Err(Error::ProbeOnSupport);
        }
        Ok(u)
    }
}

impl From<Complex64> for ProbePoint {
    fn from(u: Complex64) -> Self {
        ProbePoint(u)
    }
}

impl From<f64> for ProbePoint {
    fn from(x: f64) -> Self {
        ProbePoint::real(x)
    }
}

/// Twelve fixed probes scaled to `[a, b]`: six real points outside the support
/// and six in the upper half plane.
pub fn standard_probes(a: f64, b: f64) -> Vec<ProbePoint> {
    let c = 0.5 * (a + b);
    let r = (0.5 * (b - a)).max(0.5);
    let mut p: Vec<ProbePoint> = [-4.0, -2.0, -1.5, 1.5, 2.0, 4.0]
        .iter()
        .map(|s| ProbePoint::real(c + s * r))
        .collect();
    for (x, y) in [
        (0.0, 0.5),
        (0.0, 1.0),
        (0.8, 0.3),
        (-0.8, 0.3),
        (1.5, 0.5),
        (-1.5, 1.0),
    ] {
        p.push(ProbePoint::new(c + x * r, y * r));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probes() {
        let p = standard_probes(0.0, 1.0);
        assert_eq!(p.len(), 12);
        assert!(p.iter().all(|q| q.check(0.0, 1.0).is_ok()));
        assert_eq!(
            ProbePoint::real(0.5).check(0.0, 1.0),
            Err(Error::ProbeOnSupport)
        );
        assert!(ProbePoint::new(0.5, 1e-3).check(0.0, 1.0).is_ok());
    }
}
