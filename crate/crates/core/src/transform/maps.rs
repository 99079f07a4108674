use alloc::format;

use num_complex::Complex64;

use super::inversion::{recover_density, recover_diagram, InversionConfig, Readout, Recovered};
use super::rfun::{left_limit_r_w, DiagramR, MuR, PsiR, RFunction};
use super::{edge_point, DOMAIN_TOLERANCE};
use crate::error::{Error, Result};
use crate::grid::{DensityClass, DiagramClass, GridDensity, GridDiagram, UniformGrid};

const MIN_INTERVALS: usize = 16;

fn out_grid(a: f64, b: f64, default: usize, cfg: &InversionConfig) -> Result<UniformGrid> {
    let m = cfg.intervals.unwrap_or(default);
    if m < MIN_INTERVALS {
        return Err(Error::InvalidGrid(format!(
            "need at least {MIN_INTERVALS} intervals on the support, got {m}"
        )));
    }
    UniformGrid::new(a, b, m)
}

fn diagram_cells(w: &GridDiagram) -> usize {
    libm::round((w.b() - w.a()) / w.grid().spacing()) as usize
}

fn require_bounded(psi: &GridDensity) -> Result<()> {
    if psi.class() != DensityClass::Bounded {
        return Err(Error::InvalidMeasure(
            "expected a density bounded by one".into(),
        ));
    }
    Ok(())
}

/// `mu` with `R_mu = R_psi`.
pub fn quantize(psi: &GridDensity, cfg: &InversionConfig) -> Result<Recovered<GridDensity>> {
    require_bounded(psi)?;
    let out = out_grid(psi.a(), psi.b(), psi.grid().intervals(), cfg)?;
    recover_density(
        &PsiR(psi),
        &out,
        Readout::Density,
        DensityClass::Probability,
        cfg,
    )
}

/// `psi` with `R_psi = R_mu`; needs `R_mu > -1` left of the support.
pub fn dequantize(mu: &GridDensity, cfg: &InversionConfig) -> Result<Recovered<GridDensity>> {
    let u = Complex64::new(edge_point(mu.a(), mu.grid().spacing()), 0.0);
    let r = MuR(mu).eval(u).re;
    if !(r > -1.0 - DOMAIN_TOLERANCE) {
        return Err(Error::OutsideDomain(format!(
            "R_mu({}) = {r} is not above -1",
            u.re
        )));
    }
    let out = out_grid(mu.a(), mu.b(), mu.grid().intervals(), cfg)?;
    recover_density(&MuR(mu), &out, Readout::Bounded, DensityClass::Bounded, cfg)
}

/// Kerov's correspondence `R_w = R_mu`.
pub fn mk_mu_to_w(mu: &GridDensity, cfg: &InversionConfig) -> Result<Recovered<GridDiagram>> {
    let out = out_grid(mu.a(), mu.b(), mu.grid().intervals(), cfg)?;
    recover_diagram(&MuR(mu), &out, DiagramClass::Diagram, cfg)
}

pub fn mk_w_to_mu(w: &GridDiagram, cfg: &InversionConfig) -> Result<Recovered<GridDensity>> {
    let out = out_grid(w.a(), w.b(), diagram_cells(w), cfg)?;
    recover_density(
        &DiagramR::new(w),
        &out,
        Readout::Density,
        DensityClass::Probability,
        cfg,
    )
}

/// The quantized correspondence `R_w = R_psi`.
pub fn qmk_psi_to_w(psi: &GridDensity, cfg: &InversionConfig) -> Result<Recovered<GridDiagram>> {
    require_bounded(psi)?;
    let out = out_grid(psi.a(), psi.b(), psi.grid().intervals(), cfg)?;
    recover_diagram(&PsiR(psi), &out, DiagramClass::Quantizable, cfg)
}

pub fn qmk_w_to_psi(w: &GridDiagram, cfg: &InversionConfig) -> Result<Recovered<GridDensity>> {
    let r = left_limit_r_w(w);
    if !(r > -1.0 - DOMAIN_TOLERANCE) {
        return Err(Error::OutsideDomain(format!(
            "R_w(a-) = {r} is not above -1"
        )));
    }
    let out = out_grid(w.a(), w.b(), diagram_cells(w), cfg)?;
    recover_density(
        &DiagramR::new(w),
        &out,
        Readout::Bounded,
        DensityClass::Bounded,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{probe_defect, standard_probes};

    fn uniform() -> GridDensity {
        GridDensity::from_fn(0.0, 1.0, 1000, DensityClass::Bounded, |_| 1.0).unwrap()
    }

    #[test]
    fn uniform_quantizes_to_point_mass() {
        let cfg = InversionConfig::default();
        let mu = quantize(&uniform(), &cfg).unwrap().value;
        assert_eq!(mu.atoms().len(), 1);
        assert!((mu.atoms()[0].0 - 1.0).abs() < 1e-6);
        assert!((mu.mass() - 1.0).abs() < 1e-6);
        let back = dequantize(&mu, &cfg).unwrap().value;
        let err = back.values()[20..980]
            .iter()
            .map(|v| (v - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-2, "{err}");
        assert!((back.mass() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn uniform_maps_to_corner_at_one() {
        let cfg = InversionConfig::default();
        let w = qmk_psi_to_w(&uniform(), &cfg).unwrap().value;
        assert!((w.x0() - 1.0).abs() < 1e-9);
        let err = w
            .grid()
            .points()
            .iter()
            .zip(w.values())
            .map(|(t, v)| (v - (t - 1.0).abs()).abs())
            .fold(0.0, f64::max);
        assert!(err < 5e-3, "{err}");
    }

    #[test]
    fn uniform_mu_is_outside_the_quantizable_domain() {
        let mu = GridDensity::from_fn(0.0, 1.0, 200, DensityClass::Probability, |_| 1.0).unwrap();
        assert!(matches!(
            dequantize(&mu, &InversionConfig::default()),
            Err(Error::OutsideDomain(_))
        ));
    }

    #[test]
    fn point_mass_maps_to_single_corner() {
        let cfg = InversionConfig::default();
        let mu = GridDensity::with_atoms(
            0.0,
            1.0,
            alloc::vec![0.0; 401],
            alloc::vec![(0.4, 1.0)],
            DensityClass::Probability,
            Default::default(),
        )
        .unwrap();
        let w = mk_mu_to_w(&mu, &cfg).unwrap().value;
        let err = w
            .grid()
            .points()
            .iter()
            .zip(w.values())
            .map(|(t, v)| (v - (t - 0.4).abs()).abs())
            .fold(0.0, f64::max);
        assert!(err < 5e-3, "{err}");
        let d = probe_defect(&MuR(&mu), &DiagramR::new(&w), &standard_probes(0.0, 1.0));
        assert!(d < 1e-3);
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let psi = GridDensity::from_fn(0.0, 1.0, 8, DensityClass::Bounded, |_| 1.0).unwrap();
        assert!(matches!(
            quantize(&psi, &InversionConfig::default()),
            Err(Error::InvalidGrid(_))
        ));
    }
}
