//! Uniform periodic grids on `[0, 2π)^d` and fields stored on them.

use std::f64::consts::TAU;

use crate::error::{Result, SimError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    dim: usize,
    n: usize,
}

impl Grid {
    pub fn new(dim: usize, n: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(SimError::Config(format!("grid dimension {dim} not in 1..=3")));
        }
        if !(8..=128).contains(&n) || !n.is_multiple_of(2) {
            return Err(SimError::Config(format!("grid size {n} must be even and in 8..=128")));
        }
        Ok(Grid { dim, n })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        TAU / self.n as f64
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Distance in the flat index between neighbours along `axis`.
    pub fn stride(&self, axis: usize) -> usize {
        self.n.pow((self.dim - 1 - axis) as u32)
    }

    /// Axis indices of a flat (row-major) index.
    pub fn unflatten(&self, idx: usize) -> [usize; 3] {
        let mut out = [0; 3];
        for (a, slot) in out.iter_mut().enumerate().take(self.dim) {
            *slot = (idx / self.stride(a)) % self.n;
        }
        out
    }

    pub fn flatten(&self, ijk: [usize; 3]) -> usize {
        (0..self.dim).map(|a| (ijk[a] % self.n) * self.stride(a)).sum()
    }

    pub fn coords(&self, idx: usize) -> [f64; 3] {
        let ijk = self.unflatten(idx);
        let h = self.h();
        [ijk[0] as f64 * h, ijk[1] as f64 * h, ijk[2] as f64 * h]
    }
}

/// `c` components, each a row-major block of `grid.len()` values.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    grid: Grid,
    comps: usize,
    data: Vec<f64>,
}

impl GridField {
    pub fn zeros(grid: Grid, comps: usize) -> Self {
        GridField {
            grid,
            comps,
            data: vec![0.0; grid.len() * comps],
        }
    }

    pub fn from_data(grid: Grid, comps: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), grid.len() * comps, "field storage size");
        GridField { grid, comps, data }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn comps(&self) -> usize {
        self.comps
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn comp(&self, c: usize) -> &[f64] {
        let len = self.grid.len();
        &self.data[c * len..(c + 1) * len]
    }

    pub fn comp_mut(&mut self, c: usize) -> &mut [f64] {
        let len = self.grid.len();
        &mut self.data[c * len..(c + 1) * len]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn max_abs_diff(&self, other: &GridField) -> f64 {
        assert_eq!(self.data.len(), other.data.len());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Fourth-order central difference along `axis` with periodic wrap:
/// `(−u_{j+2} + 8u_{j+1} − 8u_{j−1} + u_{j−2}) / 12h`.
pub fn derivative_into(grid: Grid, u: &[f64], axis: usize, out: &mut [f64]) {
    let n = grid.n();
    let s = grid.stride(axis);
    let outer = grid.len() / (n * s);
    let scale = 1.0 / (12.0 * grid.h());
    for o in 0..outer {
        let block = o * n * s;
        for j in 0..n {
            let row = |k: usize| block + ((j + k) % n) * s;
            let (m2, m1, p1, p2) = (row(n - 2), row(n - 1), row(1), row(2));
            let dst = block + j * s;
            for t in 0..s {
                out[dst + t] =
                    (-u[p2 + t] + 8.0 * (u[p1 + t] - u[m1 + t]) + u[m2 + t]) * scale;
            }
        }
    }
}

pub fn derivative(u: &GridField, axis: usize) -> GridField {
    let grid = u.grid();
    let mut out = GridField::zeros(grid, u.comps());
    for c in 0..u.comps() {
        derivative_into(grid, u.comp(c), axis, out.comp_mut(c));
    }
    out
}

/// `h^d Σ u`, summed in index order.
pub fn quadrature(grid: Grid, u: &[f64]) -> f64 {
    u.iter().sum::<f64>() * grid.h().powi(grid.dim() as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sampled(grid: Grid, f: impl Fn([f64; 3]) -> f64) -> Vec<f64> {
        (0..grid.len()).map(|i| f(grid.coords(i))).collect()
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(3, 7).is_err());
        assert!(Grid::new(3, 130).is_err());
        assert!(Grid::new(4, 16).is_err());
        let g = Grid::new(3, 8).unwrap();
        assert_eq!(g.len(), 512);
        assert!((g.h() * 8.0 - TAU).abs() < 1e-15);
        assert_eq!(g.flatten(g.unflatten(300)), 300);
    }

    #[test]
    fn sine_derivative_error_and_order() {
        let err = |n| {
            let g = Grid::new(1, n).unwrap();
            let u = sampled(g, |p| p[0].sin());
            let mut du = vec![0.0; g.len()];
            derivative_into(g, &u, 0, &mut du);
            (0..g.len())
                .map(|i| (du[i] - g.coords(i)[0].cos()).abs())
                .fold(0.0, f64::max)
        };
        assert!(err(32) < 2e-4);
        let ratio = err(32) / err(64);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn derivative_along_each_axis() {
        let g = Grid::new(3, 16).unwrap();
        let u = GridField::from_data(g, 1, sampled(g, |p| p[0].sin() + (2.0 * p[1]).cos() + p[2].sin()));
        for (axis, exact) in [
            (0, Box::new(|p: [f64; 3]| p[0].cos()) as Box<dyn Fn([f64; 3]) -> f64>),
            (1, Box::new(|p: [f64; 3]| -2.0 * (2.0 * p[1]).sin())),
            (2, Box::new(|p: [f64; 3]| p[2].cos())),
        ] {
            let du = derivative(&u, axis);
            let e = (0..g.len())
                .map(|i| (du.comp(0)[i] - exact(g.coords(i))).abs())
                .fold(0.0, f64::max);
            assert!(e < 3e-2, "axis {axis}: {e}");
        }
        let c = GridField::from_data(g, 1, vec![3.5; g.len()]);
        assert!(derivative(&c, 1).data().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn quadrature_examples() {
        let g = Grid::new(1, 16).unwrap();
        assert!(quadrature(g, &sampled(g, |p| p[0].sin())).abs() < 1e-12);
        assert!((quadrature(g, &sampled(g, |p| p[0].sin().powi(2))) - PI).abs() < 1e-10);
        let g3 = Grid::new(3, 8).unwrap();
        assert!((quadrature(g3, &vec![1.0; g3.len()]) - TAU.powi(3)).abs() < 1e-9);
    }
}
