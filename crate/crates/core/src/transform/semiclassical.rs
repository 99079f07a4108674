use alloc::format;

use super::rfun::{probe_defect, DiagramR, MuR};
use super::ProbePoint;
use crate::error::{Error, Result};
use crate::grid::{DensityClass, DiagramClass, GridDensity, GridDiagram, Tolerance, UniformGrid};

/// A family `psi_eps` of bounded densities supported on `[a/eps, b/eps]`.
pub trait SemiclassicalFamily {
    /// The fixed limit support `[a, b]`.
    fn support(&self) -> (f64, f64);
    fn psi(&self, eps: f64) -> Result<GridDensity>;
    /// The diagram with `R_w = R_psi` on the same support as `psi(eps)`.
    fn w(&self, eps: f64) -> Result<GridDiagram>;
}

/// The family member at `eps`, rescaled onto the limit support.
pub fn rescaled_pair<F: SemiclassicalFamily + ?Sized>(
    family: &F,
    eps: f64,
) -> Result<(GridDensity, GridDiagram)> {
    semiclassical_rescale(&family.psi(eps)?, &family.w(eps)?, eps)
}

/// `mu_hat(t) = psi(t/eps)/eps` on `[a, b]` and `w_hat(t) = eps w(t/eps)`.
pub fn semiclassical_rescale(
    psi: &GridDensity,
    w: &GridDiagram,
    eps: f64,
) -> Result<(GridDensity, GridDiagram)> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let scale = 1.0 + psi.a().abs().max(psi.b().abs());
    if (psi.a() - w.a()).abs() > 1e-9 * scale || (psi.b() - w.b()).abs() > 1e-9 * scale {
        return Err(Error::InvalidParameter(format!(
            "support mismatch: [{}, {}] vs [{}, {}]",
            psi.a(),
            psi.b(),
            w.a(),
            w.b()
        )));
    }
    let mu = GridDensity::with_atoms(
        eps * psi.a(),
        eps * psi.b(),
        psi.values().iter().map(|v| v / eps).collect(),
        psi.atoms().iter().map(|&(c, m)| (eps * c, m)).collect(),
        DensityClass::Probability,
        Tolerance::numerical(),
    )?;
    let g = w.grid();
    let grid = UniformGrid::new(eps * g.lo(), eps * g.hi(), g.intervals())?;
    let wh = GridDiagram::with_tolerance(
        eps * w.a(),
        eps * w.b(),
        eps * w.x0(),
        grid,
        w.values().iter().map(|v| eps * v).collect(),
        DiagramClass::Diagram,
        Tolerance::numerical(),
    )?;
    Ok((mu, wh))
}

/// `max |R_mu(u) - R_w(u)|` over the probes: the defect of the classical pairing.
pub fn classical_defect(mu: &GridDensity, w: &GridDiagram, probes: &[ProbePoint]) -> f64 {
    probe_defect(&MuR(mu), &DiagramR::new(w), probes)
}
