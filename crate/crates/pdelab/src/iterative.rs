//! Jacobi and Gauss-Seidel iteration for the five-point Laplacian on the
//! unit square, with the model-problem spectrum and the classical
//! convergence-rate predictions they are tested against.

use crate::error::{Error, Result};
use crate::sparse::Csr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Jacobi,
    GaussSeidel,
}

/// What an iterative solve did: residual trail, convergence flag, and the
/// convergence factor estimated from the tail of the trail.
#[derive(Debug, Clone)]
pub struct IterationReport {
    pub method: Method,
    pub iterations: usize,
    pub residual_history: Vec<f64>,
    pub converged: bool,
    pub estimated_rho: Option<f64>,
}

/// Five-point Laplacian on the unit square at interior resolution N:
/// (N-1)^2 unknowns in lexicographic order, diagonal -4, neighbors +1.
/// Signs follow h^2 * Laplacian, so the matrix is negative definite.
pub fn assemble_laplace_2d(n: usize) -> Result<Csr> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("interior resolution N must be >= 2, got {n}")));
    }
    let m = n - 1;
    let idx = |i: usize, j: usize| (j - 1) * m + (i - 1);
    let mut trip = Vec::with_capacity(5 * m * m);
    for j in 1..n {
        for i in 1..n {
            let row = idx(i, j);
            trip.push((row, row, -4.0));
            if i > 1 {
                trip.push((row, idx(i - 1, j), 1.0));
            }
            if i < n - 1 {
                trip.push((row, idx(i + 1, j), 1.0));
            }
            if j > 1 {
                trip.push((row, idx(i, j - 1), 1.0));
            }
            if j < n - 1 {
                trip.push((row, idx(i, j + 1), 1.0));
            }
        }
    }
    Csr::from_triplets(m * m, m * m, &trip)
}

/// Right-hand side for Dirichlet data f on the boundary of the unit square:
/// each interior row collects -f over its boundary neighbors.
pub fn laplace_rhs_2d(n: usize, f: impl Fn(f64, f64) -> f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("interior resolution N must be >= 2, got {n}")));
    }
    let m = n - 1;
    let h = 1.0 / n as f64;
    let node = |i: usize| i as f64 * h;
    let mut b = vec![0.0; m * m];
    for j in 1..n {
        for i in 1..n {
            let row = (j - 1) * m + (i - 1);
            let mut s = 0.0;
            for (ni, nj) in [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)] {
                if ni == 0 || ni == n || nj == 0 || nj == n {
                    let v = f(node(ni), node(nj));
                    if !v.is_finite() {
                        return Err(Error::NonFinite(format!(
                            "boundary data at ({}, {})",
                            node(ni),
                            node(nj)
                        )));
                    }
                    s -= v;
                }
            }
            b[row] = s;
        }
    }
    Ok(b)
}

/// Eigenvalues a + 2b cos(pi k/(n+1)) of the constant tridiagonal (b, a, b),
/// listed in k-order (ascending when b < 0).
pub fn tridiag_eigenvalues(a: f64, b: f64, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| a + 2.0 * b * (std::f64::consts::PI * k as f64 / (n + 1) as f64).cos())
        .collect()
}

/// All (N-1)^2 eigenvalues -4(sin^2(pi k/2N) + sin^2(pi l/2N)) of the
/// assembled Laplacian, in (k, l) loop order.
pub fn laplace_spectrum(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity((n - 1) * (n - 1));
    for k in 1..n {
        for l in 1..n {
            let sk = (std::f64::consts::PI * k as f64 / (2.0 * n as f64)).sin();
            let sl = (std::f64::consts::PI * l as f64 / (2.0 * n as f64)).sin();
            out.push(-4.0 * (sk * sk + sl * sl));
        }
    }
    out
}

fn checked_diagonal(a: &Csr) -> Result<Vec<f64>> {
    let d = a.diagonal();
    for (row, &v) in d.iter().enumerate() {
        if v == 0.0 {
            return Err(Error::ZeroDiagonal { row });
        }
    }
    Ok(d)
}

/// One Jacobi sweep: x'_i = (b_i - sum_{j != i} a_ij x_j) / a_ii.
pub fn jacobi_sweep(a: &Csr, b: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    let d = checked_diagonal(a)?;
    let mut out = vec![0.0; x.len()];
    for i in 0..a.n_rows {
        let (cols, vals) = a.row(i);
        let mut s = b[i];
        for (&j, &v) in cols.iter().zip(vals) {
            if j != i {
                s -= v * x[j];
            }
        }
        out[i] = s / d[i];
    }
    Ok(out)
}

/// One Gauss-Seidel sweep in ascending row order, updating x in place so
/// later rows see the new values.
pub fn gauss_seidel_sweep(a: &Csr, b: &[f64], x: &mut [f64]) -> Result<()> {
    let d = checked_diagonal(a)?;
    for i in 0..a.n_rows {
        let (cols, vals) = a.row(i);
        let mut s = b[i];
        for (&j, &v) in cols.iter().zip(vals) {
            if j != i {
                s -= v * x[j];
            }
        }
        x[i] = s / d[i];
    }
    Ok(())
}

/// Iterate from x0 until the infinity-norm residual drops below tol or
/// max_iter sweeps pass. Residual growth by 1e6 over its starting value is
/// treated as divergence and returned as an error carrying the report.
pub fn solve_iterative(
    a: &Csr,
    b: &[f64],
    method: Method,
    x0: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, IterationReport)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParam(format!("tolerance must be positive, got {tol}")));
    }
    if b.len() != a.n_rows || x0.len() != a.n_cols {
        return Err(Error::GridMismatch(format!(
            "system is {} x {}, got b of {} and x0 of {}",
            a.n_rows,
            a.n_cols,
            b.len(),
            x0.len()
        )));
    }
    let mut x = x0.to_vec();
    let r0 = a.residual_linf(&x, b);
    let mut history = vec![r0];
    let mut converged = r0 < tol;
    let mut iterations = 0;

    while !converged && iterations < max_iter {
        match method {
            Method::Jacobi => x = jacobi_sweep(a, b, &x)?,
            Method::GaussSeidel => gauss_seidel_sweep(a, b, &mut x)?,
        }
        iterations += 1;
        let r = a.residual_linf(&x, b);
        history.push(r);
        if r < tol {
            converged = true;
        } else if r > 1e6 * r0.max(f64::MIN_POSITIVE) || !r.is_finite() {
            let report = IterationReport {
                method,
                iterations,
                residual_history: history,
                converged: false,
                estimated_rho: None,
            };
            return Err(Error::Diverged(Box::new(report)));
        }
    }

    let estimated_rho = estimate_rho(&history);
    let report = IterationReport { method, iterations, residual_history: history, converged, estimated_rho };
    Ok((x, report))
}

/// Geometric mean of the last 10 residual ratios; None while the trail is
/// too short to skip the transient.
fn estimate_rho(history: &[f64]) -> Option<f64> {
    let n = history.len();
    if n < 11 {
        return None;
    }
    let (a, b) = (history[n - 11], history[n - 1]);
    if a > 0.0 && b > 0.0 {
        Some((b / a).powf(0.1))
    } else {
        None
    }
}

/// Spectral radius of the model-problem iteration matrix:
/// Jacobi 1 - 2 sin^2(pi/2N), Gauss-Seidel its square.
pub fn predicted_spectral_radius(method: Method, n: usize) -> f64 {
    let s = (std::f64::consts::PI / (2.0 * n as f64)).sin();
    let jac = 1.0 - 2.0 * s * s;
    match method {
        Method::Jacobi => jac,
        Method::GaussSeidel => jac * jac,
    }
}

/// Classical sweep-count estimate for relative error h^2 on the model
/// problem: (4/pi^2) N^2 ln N for Jacobi, half that for Gauss-Seidel.
pub fn predicted_iteration_count(method: Method, n: usize) -> f64 {
    let nf = n as f64;
    let jac = 4.0 / (std::f64::consts::PI * std::f64::consts::PI) * nf * nf * nf.ln();
    match method {
        Method::Jacobi => jac,
        Method::GaussSeidel => 0.5 * jac,
    }
}
