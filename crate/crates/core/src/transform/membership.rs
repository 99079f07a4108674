use alloc::vec::Vec;

use num_complex::Complex64;

use super::rfun::{DiagramR, MuR, PsiR, RFunction};
use super::{edge_point, standard_probes, DOMAIN_TOLERANCE};
use crate::grid::{DensityClass, DiagramClass, GridDensity, GridDiagram, Tolerance};

/// Object handed to [`membership_checks`].
#[derive(Clone, Copy, Debug)]
pub enum Member<'a> {
    Density(&'a GridDensity),
    Diagram(&'a GridDiagram),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    /// Whether the declared class requires this check.
    pub required: bool,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct MembershipReport {
    pub checks: Vec<Check>,
}

impl MembershipReport {
    pub fn all_required_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.required)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, required: bool, passed: bool, worst: f64) {
        self.checks.push(Check {
            name,
            required,
            passed,
            worst,
        });
    }
}

const SIGN_TOLERANCE: f64 = 1e-9;

fn r_class_checks(rep: &mut MembershipReport, rf: &dyn RFunction, h: f64, quantizable: bool) {
    let (a, b) = rf.support();
    let probes = standard_probes(a, b);
    let mut upper = f64::NEG_INFINITY;
    let mut left = f64::NEG_INFINITY;
    let mut right = f64::INFINITY;
    for p in &probes {
        let u = p.value();
        let r = rf.eval(u);
        if u.im > 0.0 {
            upper = upper.max(r.im);
        } else if u.re < a {
            left = left.max(r.re);
        } else {
            right = right.min(r.re);
        }
    }
    rep.push("r_upper_half_plane", true, upper <= SIGN_TOLERANCE, upper);
    rep.push("r_negative_left", true, left < 0.0, left);
    rep.push("r_positive_right", true, right > 0.0, right);
    let edge = rf.eval(Complex64::new(edge_point(a, h), 0.0)).re;
    rep.push(
        "above_minus_one_left",
        quantizable,
        edge > -1.0 - DOMAIN_TOLERANCE,
        edge,
    );
    rep.push("above_minus_one_right", quantizable, right > -1.0, right);
}

/// Class-membership diagnostics at finite probe sets.
pub fn membership_checks(obj: Member<'_>) -> MembershipReport {
    let tol = Tolerance::numerical();
    let mut rep = MembershipReport::default();
    match obj {
        Member::Density(d) => {
            let mass = d.mass();
            rep.push("mass", true, (mass - 1.0).abs() <= tol.mass, mass);
            let min = d.values().iter().cloned().fold(f64::INFINITY, f64::min);
            rep.push("nonnegative", true, min >= -tol.bound, min);
            let max = d.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let bounded = d.class() == DensityClass::Bounded;
            rep.push(
                "bounded_by_one",
                bounded,
                max <= 1.0 + tol.bound && d.atoms().is_empty(),
                max,
            );
            if bounded {
                r_class_checks(&mut rep, &PsiR(d), d.grid().spacing(), false);
            } else {
                r_class_checks(&mut rep, &MuR(d), d.grid().spacing(), false);
            }
        }
        Member::Diagram(w) => {
            let h = w.grid().spacing();
            let lip = w
                .values()
                .windows(2)
                .map(|p| (p[1] - p[0]).abs() / h)
                .fold(0.0, f64::max);
            rep.push("lipschitz", true, lip <= 1.0 + tol.lipschitz, lip);
            let tail = w
                .grid()
                .points()
                .iter()
                .zip(w.values())
                .filter(|(t, _)| **t <= w.a() || **t >= w.b())
                .map(|(t, v)| (v - (t - w.x0()).abs()).abs())
                .fold(0.0, f64::max);
            rep.push("tails", true, tail <= tol.tail, tail);
            let inside = w.x0() >= w.a() - tol.tail && w.x0() <= w.b() + tol.tail;
            rep.push("center_in_support", true, inside, w.x0());
            let q = w.class() == DiagramClass::Quantizable;
            r_class_checks(&mut rep, &DiagramR::new(w), h, q);
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_passes() {
        let psi = GridDensity::from_fn(0.0, 1.0, 500, DensityClass::Bounded, |_| 1.0).unwrap();
        let rep = membership_checks(Member::Density(&psi));
        assert!(rep.checks.iter().all(|c| c.passed), "{rep:?}");
    }

    #[test]
    fn overfull_density_fails_bound() {
        let f = |t: f64| if (0.25..0.75).contains(&t) { 1.5 } else { 0.5 };
        let d = GridDensity::from_fn(0.0, 1.0, 1000, DensityClass::Probability, f).unwrap();
        let rep = membership_checks(Member::Density(&d));
        assert!(!rep.get("bounded_by_one").unwrap().passed);
        assert!(rep.all_required_passed());
        assert!(d
            .with_class(DensityClass::Bounded, Tolerance::default())
            .is_err());
    }
}
