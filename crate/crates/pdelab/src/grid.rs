//! Uniform grids, time axes, and grid functions with weighted inner products.
//! Everything downstream (schemes, eigenfunction expansions, error norms)
//! speaks in terms of these types.

use crate::error::{Error, Result};
use crate::io;

/// Uniform 1-d grid with `n_cells + 1` nodes on `[x_lo, x_hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformGrid1D {
    pub x_lo: f64,
    pub x_hi: f64,
    pub n_cells: usize,
}

impl UniformGrid1D {
    pub fn new(x_lo: f64, x_hi: f64, n_cells: usize) -> Result<Self> {
        if !(x_hi > x_lo) || !x_lo.is_finite() || !x_hi.is_finite() {
            return Err(Error::InvalidParam(format!(
                "grid needs finite x_lo < x_hi, got [{x_lo}, {x_hi}]"
            )));
        }
        if n_cells == 0 {
            return Err(Error::InvalidParam("grid needs at least one cell".into()));
        }
        Ok(Self { x_lo, x_hi, n_cells })
    }

    pub fn h(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.n_cells as f64
    }

    pub fn n_nodes(&self) -> usize {
        self.n_cells + 1
    }

    /// Node i, exact at both endpoints.
    pub fn node(&self, i: usize) -> f64 {
        if i == self.n_cells {
            self.x_hi
        } else {
            self.x_lo + i as f64 * self.h()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_nodes()).map(|i| self.node(i)).collect()
    }
}

/// Discrete time axis t_n = n * dt, n = 0..=n_steps.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeAxis {
    pub dt: f64,
    pub n_steps: usize,
}

impl TimeAxis {
    pub fn new(dt: f64, n_steps: usize) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidParam(format!("time step must be positive, got {dt}")));
        }
        Ok(Self { dt, n_steps })
    }

    pub fn t(&self, n: usize) -> f64 {
        n as f64 * self.dt
    }
}

/// Uniform tensor grid on `[x_lo, x_hi] x [y_lo, y_hi]`.
/// Node (i, j) lives at flat index `j * (nx + 1) + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformGrid2D {
    pub x: UniformGrid1D,
    pub y: UniformGrid1D,
}

impl UniformGrid2D {
    pub fn new(x: UniformGrid1D, y: UniformGrid1D) -> Self {
        Self { x, y }
    }

    pub fn square(lo: f64, hi: f64, n_cells: usize) -> Result<Self> {
        let g = UniformGrid1D::new(lo, hi, n_cells)?;
        Ok(Self { x: g.clone(), y: g })
    }

    pub fn n_nodes(&self) -> usize {
        self.x.n_nodes() * self.y.n_nodes()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.x.n_nodes() + i
    }
}

/// Values attached to the nodes of a 1-d grid.
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub grid: UniformGrid1D,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: UniformGrid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_nodes() {
            return Err(Error::GridMismatch(format!(
                "{} values on a grid with {} nodes",
                values.len(),
                grid.n_nodes()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Sample f at every node; rejects non-finite samples by node location.
    pub fn sample(grid: UniformGrid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.n_nodes());
        for i in 0..grid.n_nodes() {
            let x = grid.node(i);
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("sample at x = {x} is {v}")));
            }
            values.push(v);
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: UniformGrid1D) -> Self {
        let n = grid.n_nodes();
        Self { grid, values: vec![0.0; n] }
    }

    pub fn norm_linf(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn to_csv(&self) -> String {
        io::csv_table(&["x", "u"], &[&self.grid.nodes(), &self.values])
    }
}

/// Values on a 2-d grid, stored x-fastest.
#[derive(Debug, Clone)]
pub struct GridFunction2D {
    pub grid: UniformGrid2D,
    pub values: Vec<f64>,
}

impl GridFunction2D {
    pub fn new(grid: UniformGrid2D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_nodes() {
            return Err(Error::GridMismatch(format!(
                "{} values on a grid with {} nodes",
                values.len(),
                grid.n_nodes()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn sample(grid: UniformGrid2D, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut values = vec![0.0; grid.n_nodes()];
        for j in 0..grid.y.n_nodes() {
            for i in 0..grid.x.n_nodes() {
                let (x, y) = (grid.x.node(i), grid.y.node(j));
                let v = f(x, y);
                if !v.is_finite() {
                    return Err(Error::NonFinite(format!("sample at ({x}, {y}) is {v}")));
                }
                values[grid.index(i, j)] = v;
            }
        }
        Ok(Self { grid, values })
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    pub fn norm_linf(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn to_csv(&self) -> String {
        let n = self.grid.n_nodes();
        let (mut xs, mut ys) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for j in 0..self.grid.y.n_nodes() {
            for i in 0..self.grid.x.n_nodes() {
                xs.push(self.grid.x.node(i));
                ys.push(self.grid.y.node(j));
            }
        }
        io::csv_table(&["x", "y", "u"], &[&xs, &ys, &self.values])
    }
}

/// L2 space on a grid weighted by a positive density rho, trapezoid rule.
pub struct WeightedSpace {
    pub grid: UniformGrid1D,
    pub rho: Vec<f64>,
}

impl WeightedSpace {
    pub fn new(grid: UniformGrid1D, rho: Vec<f64>) -> Result<Self> {
        if rho.len() != grid.n_nodes() {
            return Err(Error::GridMismatch(format!(
                "{} weights on a grid with {} nodes",
                rho.len(),
                grid.n_nodes()
            )));
        }
        if rho.iter().any(|&r| !(r > 0.0)) {
            return Err(Error::InvalidParam("weight rho must be positive".into()));
        }
        Ok(Self { grid, rho })
    }

    pub fn unweighted(grid: UniformGrid1D) -> Self {
        let n = grid.n_nodes();
        Self { grid, rho: vec![1.0; n] }
    }

    /// Trapezoid-rule integral of u * v * rho.
    pub fn inner_product(&self, u: &[f64], v: &[f64]) -> f64 {
        assert_eq!(u.len(), self.rho.len());
        assert_eq!(v.len(), self.rho.len());
        let n = self.rho.len();
        let mut s = 0.0;
        for i in 0..n {
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            s += w * u[i] * v[i] * self.rho[i];
        }
        s * self.grid.h()
    }

    pub fn norm_l2(&self, u: &[f64]) -> f64 {
        self.inner_product(u, u).sqrt()
    }
}

/// Max-norm of the difference of two equal-length value slices.
pub fn max_err(u: &[f64], v: &[f64]) -> f64 {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

/// Unweighted discrete L2 error, trapezoid rule on the grid.
pub fn l2_err(grid: &UniformGrid1D, u: &[f64], v: &[f64]) -> f64 {
    let d: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    WeightedSpace::unweighted(grid.clone()).norm_l2(&d)
}
