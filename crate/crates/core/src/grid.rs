//! Uniform grids and gridded densities and diagrams.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Grid size used when a caller does not choose one.
pub const DEFAULT_INTERVALS: usize = 2000;

/// `intervals + 1` equally spaced nodes on `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformGrid {
    lo: f64,
    hi: f64,
    intervals: usize,
}

impl UniformGrid {
    pub fn new(lo: f64, hi: f64, intervals: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
            return Err(Error::InvalidGrid(format!(
                "need finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        if intervals == 0 {
            return Err(Error::InvalidGrid("need at least one interval".into()));
        }
        Ok(UniformGrid { lo, hi, intervals })
    }

    /// Recover a grid from explicit nodes, which must be equally spaced.
    pub fn from_points(points: &[f64]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidGrid("need at least two nodes".into()));
        }
        let g = UniformGrid::new(points[0], points[points.len() - 1], points.len() - 1)?;
        let h = g.spacing();
        for (j, &p) in points.iter().enumerate() {
            if (p - g.point(j)).abs() > 1e-9 * h.max(1.0) {
                return Err(Error::InvalidGrid(format!(
                    "node {j} is not equally spaced"
                )));
            }
        }
        Ok(g)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / self.intervals as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        if j == self.intervals {
            self.hi
        } else {
            self.lo + j as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.point(j)).collect()
    }

    /// Linear interpolation of nodal values; `None` outside the grid.
    pub fn interpolate(&self, values: &[f64], t: f64) -> Option<f64> {
        if t < self.lo || t > self.hi {
            return None;
        }
        let s = (t - self.lo) / self.spacing();
        let j = (libm::floor(s) as usize).min(self.intervals - 1);
        let f = s - j as f64;
        Some(values[j] * (1.0 - f) + values[j + 1] * f)
    }

    /// Composite trapezoid rule.
    pub fn trapezoid(&self, values: &[f64]) -> f64 {
        let n = values.len();
        let inner: f64 = values[1..n - 1].iter().sum();
        self.spacing() * (inner + 0.5 * (values[0] + values[n - 1]))
    }

    /// Running trapezoid integral starting at zero.
    pub fn cumulative_trapezoid(&self, values: &[f64]) -> Vec<f64> {
        let h = self.spacing();
        let mut out = Vec::with_capacity(values.len());
        let mut acc = 0.0;
        out.push(0.0);
        for w in values.windows(2) {
            acc += 0.5 * h * (w[0] + w[1]);
            out.push(acc);
        }
        out
    }
}

/// Validation tolerances for gridded objects.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub mass: f64,
    pub bound: f64,
    pub lipschitz: f64,
    pub tail: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            mass: 1e-3,
            bound: 1e-6,
            lipschitz: 1e-6,
            tail: 1e-6,
        }
    }
}

impl Tolerance {
    /// Looser tolerances for objects produced by numerical inversion.
    pub fn numerical() -> Self {
        Tolerance {
            mass: 1e-3,
            bound: 1e-3,
            lipschitz: 1e-3,
            tail: 1e-3,
        }
    }
}

/// `M[a,b]` (probability densities) or `M~[a,b]` (densities bounded by one).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DensityClass {
    Probability,
    Bounded,
}

/// `D[a,b]` or the quantizable subclass `D~[a,b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramClass {
    Diagram,
    Quantizable,
}

/// A probability measure on `[a,b]`: nodal density values plus optional atoms.
#[derive(Clone, Debug, PartialEq)]
pub struct GridDensity {
    grid: UniformGrid,
    values: Vec<f64>,
    atoms: Vec<(f64, f64)>,
    class: DensityClass,
}

impl GridDensity {
    pub fn new(a: f64, b: f64, values: Vec<f64>, class: DensityClass) -> Result<Self> {
        GridDensity::with_atoms(a, b, values, Vec::new(), class, Tolerance::default())
    }

    pub fn with_atoms(
        a: f64,
        b: f64,
        values: Vec<f64>,
        atoms: Vec<(f64, f64)>,
        class: DensityClass,
        tol: Tolerance,
    ) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidGrid("need at least two nodes".into()));
        }
        let grid = UniformGrid::new(a, b, values.len() - 1)?;
        let d = GridDensity {
            grid,
            values,
            atoms,
            class,
        };
        d.validate(tol)?;
        Ok(d)
    }

    pub fn from_fn(
        a: f64,
        b: f64,
        intervals: usize,
        class: DensityClass,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let grid = UniformGrid::new(a, b, intervals)?;
        GridDensity::new(a, b, grid.points().into_iter().map(f).collect(), class)
    }

    fn validate(&self, tol: Tolerance) -> Result<()> {
        if let Some(j) = self.values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidMeasure(format!(
                "non-finite value at node {j}"
            )));
        }
        let min = self.values.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -tol.bound {
            return Err(Error::InvalidMeasure(format!(
                "negative density value {min}"
            )));
        }
        if self.class == DensityClass::Bounded {
            let max = self
                .values
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max);
            if max > 1.0 + tol.bound {
                return Err(Error::InvalidMeasure(format!(
                    "density value {max} exceeds 1"
                )));
            }
        }
        for &(c, m) in &self.atoms {
            if !(c >= self.a() && c <= self.b()) || !(m > 0.0) || !m.is_finite() {
                return Err(Error::InvalidMeasure(format!("bad atom ({c}, {m})")));
            }
        }
        if self.class == DensityClass::Bounded && !self.atoms.is_empty() {
            return Err(Error::InvalidMeasure(
                "bounded densities carry no atoms".into(),
            ));
        }
        let mass = self.mass();
        if (mass - 1.0).abs() > tol.mass {
            return Err(Error::InvalidMeasure(format!("total mass {mass} is not 1")));
        }
        Ok(())
    }

    pub fn a(&self) -> f64 {
        self.grid.lo()
    }

    pub fn b(&self) -> f64 {
        self.grid.hi()
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn class(&self) -> DensityClass {
        self.class
    }

    pub fn continuous_mass(&self) -> f64 {
        self.grid.trapezoid(&self.values)
    }

    pub fn mass(&self) -> f64 {
        self.continuous_mass() + self.atoms.iter().map(|a| a.1).sum::<f64>()
    }

    pub fn moment(&self, k: u32) -> f64 {
        let g: Vec<f64> = self
            .grid
            .points()
            .iter()
            .zip(&self.values)
            .map(|(t, v)| v * libm::pow(*t, k as f64))
            .collect();
        self.grid.trapezoid(&g)
            + self
                .atoms
                .iter()
                .map(|(c, m)| m * libm::pow(*c, k as f64))
                .sum::<f64>()
    }

    /// Density value with linear interpolation, zero off the support.
    pub fn value_at(&self, t: f64) -> f64 {
        self.grid.interpolate(&self.values, t).unwrap_or(0.0)
    }

    /// Same data, reinterpreted under another class flag.
    pub fn with_class(&self, class: DensityClass, tol: Tolerance) -> Result<Self> {
        let d = GridDensity {
            class,
            ..self.clone()
        };
        d.validate(tol)?;
        Ok(d)
    }
}

/// A continual diagram sampled on a grid that covers its support `[a,b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridDiagram {
    a: f64,
    b: f64,
    x0: f64,
    grid: UniformGrid,
    values: Vec<f64>,
    class: DiagramClass,
}

impl GridDiagram {
    pub fn new(
        a: f64,
        b: f64,
        x0: f64,
        grid: UniformGrid,
        values: Vec<f64>,
        class: DiagramClass,
    ) -> Result<Self> {
        GridDiagram::with_tolerance(a, b, x0, grid, values, class, Tolerance::default())
    }

    pub fn with_tolerance(
        a: f64,
        b: f64,
        x0: f64,
        grid: UniformGrid,
        values: Vec<f64>,
        class: DiagramClass,
        tol: Tolerance,
    ) -> Result<Self> {
        let d = GridDiagram {
            a,
            b,
            x0,
            grid,
            values,
            class,
        };
        d.validate(tol)?;
        Ok(d)
    }

    pub fn from_fn(
        a: f64,
        b: f64,
        x0: f64,
        grid: UniformGrid,
        class: DiagramClass,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let values = grid.points().into_iter().map(f).collect();
        GridDiagram::new(a, b, x0, grid, values, class)
    }

    fn validate(&self, tol: Tolerance) -> Result<()> {
        let (a, b, x0) = (self.a, self.b, self.x0);
        if !(a.is_finite() && b.is_finite() && x0.is_finite()) || a > b {
            return Err(Error::InvalidDiagram(format!("bad support [{a}, {b}]")));
        }
        if self.values.len() != self.grid.len() {
            return Err(Error::LengthMismatch {
                expected: self.grid.len(),
                found: self.values.len(),
            });
        }
        let slack = 1e-12 * (1.0 + a.abs().max(b.abs()));
        if self.grid.lo() > a + slack || self.grid.hi() < b - slack {
            return Err(Error::InvalidDiagram(format!(
                "grid does not cover [{a}, {b}]"
            )));
        }
        if x0 < a - tol.tail || x0 > b + tol.tail {
            return Err(Error::InvalidDiagram(format!(
                "center {x0} outside [{a}, {b}]"
            )));
        }
        if let Some(j) = self.values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDiagram(format!(
                "non-finite value at node {j}"
            )));
        }
        let h = self.grid.spacing();
        for (j, w) in self.values.windows(2).enumerate() {
            if (w[1] - w[0]).abs() > h * (1.0 + tol.lipschitz) {
                return Err(Error::InvalidDiagram(format!(
                    "Lipschitz bound violated on cell {j}"
                )));
            }
        }
        for (j, (&t, &w)) in self.grid.points().iter().zip(&self.values).enumerate() {
            if (t <= a || t >= b) && (w - (t - x0).abs()).abs() > tol.tail {
                return Err(Error::InvalidDiagram(format!(
                    "node {j} outside the support differs from |t - x0|"
                )));
            }
        }
        if self.class == DiagramClass::Quantizable {
            let r = crate::transform::left_limit_r_w(self);
            if !(r > -1.0 - crate::transform::DOMAIN_TOLERANCE) {
                return Err(Error::OutsideDomain(format!(
                    "R_w({}) = {r} is not above -1",
                    crate::transform::edge_point(a, self.grid.spacing())
                )));
            }
        }
        Ok(())
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn class(&self) -> DiagramClass {
        self.class
    }

    pub fn value_at(&self, t: f64) -> f64 {
        self.grid
            .interpolate(&self.values, t)
            .unwrap_or_else(|| (t - self.x0).abs())
    }

    /// Nodal values of `(w(t) - |t - x0|) / 2`.
    pub fn sigma(&self) -> Vec<f64> {
        self.grid
            .points()
            .iter()
            .zip(&self.values)
            .map(|(t, w)| 0.5 * (w - (t - self.x0).abs()))
            .collect()
    }

    pub fn with_class(&self, class: DiagramClass, tol: Tolerance) -> Result<Self> {
        let d = GridDiagram {
            class,
            ..self.clone()
        };
        d.validate(tol)?;
        Ok(d)
    }
}
