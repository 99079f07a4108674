//! Cauchy integrals of piecewise-linear data, integrated exactly cell by cell.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::grid::UniformGrid;

/// Principal `log(1 + z)`, accurate for small `z`.
pub(crate) fn log1p_c(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    let re = 0.5 * libm::log1p(2.0 * x + x * x + y * y);
    let im = libm::atan2(y, 1.0 + x);
    Complex64::new(re, im)
}

/// `log((u - t_j) / (u - t_{j+1}))` for a cell of width `h`.
#[inline]
fn cell_log(u: Complex64, t_next: f64, h: f64) -> Complex64 {
    log1p_c(Complex64::new(h, 0.0) / (u - t_next))
}

/// `int f(t) / (u - t) dt` for the linear interpolant of `values` on `grid`.
pub(crate) fn cauchy_linear(grid: &UniformGrid, values: &[f64], u: Complex64) -> Complex64 {
    let h = grid.spacing();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..grid.intervals() {
        let tj = grid.point(j);
        let s = (values[j + 1] - values[j]) / h;
        let l = cell_log(u, grid.point(j + 1), h);
        acc += (values[j] + s * (u - tj)) * l - s * h;
    }
    acc
}

/// `int f'(t) / (u - t) dt` for the linear interpolant of `values`.
#[cfg(test)]
pub(crate) fn cauchy_slopes(grid: &UniformGrid, values: &[f64], u: Complex64) -> Complex64 {
    let h = grid.spacing();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..grid.intervals() {
        let s = (values[j + 1] - values[j]) / h;
        if s != 0.0 {
            acc += s * cell_log(u, grid.point(j + 1), h);
        }
    }
    acc
}

/// Offset `k0` with `out.point(k) = data.point(k + k0)` when both grids share a lattice.
fn lattice_offset(data: &UniformGrid, out: &UniformGrid) -> Option<isize> {
    let h = data.spacing();
    if (out.spacing() - h).abs() > 1e-12 * h {
        return None;
    }
    let off = (out.lo() - data.lo()) / h;
    let r = libm::round(off);
    if (off - r).abs() > 1e-9 {
        return None;
    }
    Some(r as isize)
}

/// Cell logarithms `log1p(h / ((d h) + i eta))` indexed by `d = k + k0 - j - 1`.
struct LogTable {
    base: isize,
    logs: Vec<Complex64>,
}

impl LogTable {
    fn new(data: &UniformGrid, out: &UniformGrid, k0: isize, eta: f64) -> Self {
        let h = data.spacing();
        let dmin = k0 - data.intervals() as isize;
        let dmax = out.intervals() as isize + k0;
        let logs = (dmin..=dmax)
            .map(|d| log1p_c(Complex64::new(h, 0.0) / Complex64::new(d as f64 * h, eta)))
            .collect();
        LogTable { base: dmin, logs }
    }

    #[inline]
    fn get(&self, d: isize) -> Complex64 {
        self.logs[(d - self.base) as usize]
    }
}

/// [`cauchy_linear`] at every `out` node shifted by `i eta`, or `None` off-lattice.
pub(crate) fn cauchy_linear_lattice(
    data: &UniformGrid,
    values: &[f64],
    out: &UniformGrid,
    eta: f64,
) -> Option<Vec<Complex64>> {
    let k0 = lattice_offset(data, out)?;
    let table = LogTable::new(data, out, k0, eta);
    let h = data.spacing();
    let slopes: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]) / h).collect();
    Some(
        (0..out.len())
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, &s) in slopes.iter().enumerate() {
                    let d = k as isize + k0 - j as isize;
                    let du = Complex64::new(d as f64 * h, eta);
                    acc += (values[j] + s * du) * table.get(d - 1) - s * h;
                }
                acc
            })
            .collect(),
    )
}

/// [`cauchy_slopes`] at every `out` node shifted by `i eta`, or `None` off-lattice.
pub(crate) fn cauchy_slopes_lattice(
    data: &UniformGrid,
    values: &[f64],
    out: &UniformGrid,
    eta: f64,
) -> Option<Vec<Complex64>> {
    let k0 = lattice_offset(data, out)?;
    let table = LogTable::new(data, out, k0, eta);
    let h = data.spacing();
    let slopes: Vec<(usize, f64)> = values
        .windows(2)
        .map(|w| (w[1] - w[0]) / h)
        .enumerate()
        .filter(|(_, s)| *s != 0.0)
        .collect();
    Some(
        (0..out.len())
            .map(|k| {
                slopes
                    .iter()
                    .map(|&(j, s)| s * table.get(k as isize + k0 - j as isize - 1))
                    .sum()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_density() {
        let g = UniformGrid::new(0.0, 1.0, 10).unwrap();
        let v = alloc::vec![1.0; 11];
        let r = cauchy_linear(&g, &v, Complex64::new(2.0, 0.0));
        assert!((r.re - libm::log(2.0)).abs() < 1e-14 && r.im.abs() < 1e-15);
        let u = Complex64::new(0.3, 0.2);
        let exact = (u / (u - 1.0)).ln();
        assert!((cauchy_linear(&g, &v, u) - exact).norm() < 1e-13);
    }

    #[test]
    fn linear_density_is_exact() {
        let g = UniformGrid::new(0.0, 1.0, 7).unwrap();
        let v: Vec<f64> = g.points().iter().map(|t| 2.0 * t).collect();
        let u = Complex64::new(0.4, 0.1);
        // int 2t/(u-t) = 2u log(u/(u-1)) - 2
        let exact = 2.0 * u * (u / (u - 1.0)).ln() - 2.0;
        assert!((cauchy_linear(&g, &v, u) - exact).norm() < 1e-12);
    }

    #[test]
    fn lattice_agrees_with_pointwise() {
        let g = UniformGrid::new(-1.0, 1.0, 40).unwrap();
        let v: Vec<f64> = g.points().iter().map(|t| 1.0 - t * t).collect();
        let out = UniformGrid::new(-0.5, 0.5, 20).unwrap();
        let eta = 0.03;
        let fast = cauchy_linear_lattice(&g, &v, &out, eta).unwrap();
        let fast_s = cauchy_slopes_lattice(&g, &v, &out, eta).unwrap();
        for (k, t) in out.points().into_iter().enumerate() {
            let u = Complex64::new(t, eta);
            assert!((fast[k] - cauchy_linear(&g, &v, u)).norm() < 1e-12);
            assert!((fast_s[k] - cauchy_slopes(&g, &v, u)).norm() < 1e-12);
        }
        let skew = UniformGrid::new(-0.51, 0.5, 20).unwrap();
        assert!(cauchy_linear_lattice(&g, &v, &skew, eta).is_none());
    }
}
