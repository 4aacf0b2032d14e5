//! Method of characteristics for first-order scalar PDEs a u_x + b u_t = c,
//! linear or quasilinear: RK4 integration of the characteristic system,
//! Jacobian monitoring, Newton inversion back to (x, t), implicit Burgers
//! evaluation, and breaking-time computation.

use crate::error::{Error, Result};
use crate::io;
use crate::roots::{bisect, golden_min};
use crate::{fn3, Fn1, Fn3};

/// a u_x + b u_t = c with data u = phi on the curve (x0(tau), t0(tau)).
#[derive(Clone)]
pub struct CharacteristicProblem {
    pub a: Fn3,
    pub b: Fn3,
    pub c: Fn3,
    pub x0: Fn1,
    pub t0: Fn1,
    pub phi: Fn1,
    pub tau_lo: f64,
    pub tau_hi: f64,
}

impl CharacteristicProblem {
    /// Quasilinear problem: coefficients may depend on u.
    pub fn quasilinear(
        a: Fn3,
        b: Fn3,
        c: Fn3,
        x0: Fn1,
        t0: Fn1,
        phi: Fn1,
        tau_lo: f64,
        tau_hi: f64,
    ) -> Result<Self> {
        if !(tau_hi > tau_lo) {
            return Err(Error::InvalidParam(format!("need tau_lo < tau_hi, got [{tau_lo}, {tau_hi}]")));
        }
        Ok(Self { a, b, c, x0, t0, phi, tau_lo, tau_hi })
    }

    /// Linear problem a u_x + b u_t = c_lin u + d: the data ODE closes as
    /// du/ds = c_lin u + d along the curves.
    #[allow(clippy::too_many_arguments)]
    pub fn linear(
        a: crate::Fn2,
        b: crate::Fn2,
        c_lin: crate::Fn2,
        d: crate::Fn2,
        x0: Fn1,
        t0: Fn1,
        phi: Fn1,
        tau_lo: f64,
        tau_hi: f64,
    ) -> Result<Self> {
        let aa = fn3(move |x, t, _| a(x, t));
        let bb = fn3(move |x, t, _| b(x, t));
        let cc = fn3(move |x, t, u| c_lin(x, t) * u + d(x, t));
        Self::quasilinear(aa, bb, cc, x0, t0, phi, tau_lo, tau_hi)
    }

    /// Inviscid Burgers u_t + u u_x = 0 with data phi on t = 0.
    pub fn burgers(phi: Fn1, tau_lo: f64, tau_hi: f64) -> Result<Self> {
        Self::quasilinear(
            fn3(|_, _, u| u),
            fn3(|_, _, _| 1.0),
            fn3(|_, _, _| 0.0),
            crate::fn1(|tau| tau),
            crate::fn1(|_| 0.0),
            phi,
            tau_lo,
            tau_hi,
        )
    }

    fn deriv(&self, x: f64, t: f64, u: f64) -> [f64; 3] {
        [(self.a)(x, t, u), (self.b)(x, t, u), (self.c)(x, t, u)]
    }

    fn rk4_step(&self, y: [f64; 3], ds: f64) -> [f64; 3] {
        let add = |y: [f64; 3], k: [f64; 3], w: f64| [y[0] + w * k[0], y[1] + w * k[1], y[2] + w * k[2]];
        let k1 = self.deriv(y[0], y[1], y[2]);
        let y2 = add(y, k1, ds / 2.0);
        let k2 = self.deriv(y2[0], y2[1], y2[2]);
        let y3 = add(y, k2, ds / 2.0);
        let k3 = self.deriv(y3[0], y3[1], y3[2]);
        let y4 = add(y, k3, ds);
        let k4 = self.deriv(y4[0], y4[1], y4[2]);
        [
            y[0] + ds / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + ds / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            y[2] + ds / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        ]
    }

    /// State (x, t, u) at curve parameter s, from the data point tau.
    pub fn integrate_to(&self, tau: f64, s: f64, base_ds: f64) -> [f64; 3] {
        let mut y = [(self.x0)(tau), (self.t0)(tau), (self.phi)(tau)];
        if s == 0.0 {
            return y;
        }
        let n = ((s.abs() / base_ds).ceil() as usize).max(16);
        let ds = s / n as f64;
        for _ in 0..n {
            y = self.rk4_step(y, ds);
        }
        y
    }
}

/// Integrated characteristic curves: arrays indexed [i_tau][i_s].
pub struct CharacteristicFamily {
    pub problem: CharacteristicProblem,
    pub tau: Vec<f64>,
    pub s: Vec<f64>,
    pub x: Vec<Vec<f64>>,
    pub t: Vec<Vec<f64>>,
    pub u: Vec<Vec<f64>>,
    /// Jacobian a dt/dtau - b dx/dtau, tau-derivatives by central difference.
    pub delta: Vec<Vec<f64>>,
    /// Per curve: first s index where the state left the finite range.
    pub truncated: Vec<Option<usize>>,
}

/// Integrate the family over [tau_lo, tau_hi] x [0, s_max] by fixed-step RK4.
pub fn integrate_family(
    problem: &CharacteristicProblem,
    n_tau: usize,
    n_s: usize,
    s_max: f64,
) -> Result<CharacteristicFamily> {
    if n_tau < 2 || n_s < 2 {
        return Err(Error::InvalidParam(format!("need n_tau, n_s >= 2, got {n_tau}, {n_s}")));
    }
    if !(s_max > 0.0) {
        return Err(Error::InvalidParam(format!("s_max must be positive, got {s_max}")));
    }
    let tau: Vec<f64> = (0..=n_tau)
        .map(|i| problem.tau_lo + (problem.tau_hi - problem.tau_lo) * i as f64 / n_tau as f64)
        .collect();
    let s: Vec<f64> = (0..=n_s).map(|j| s_max * j as f64 / n_s as f64).collect();
    let ds = s_max / n_s as f64;

    let n_curves = tau.len();
    let mut x = vec![vec![f64::NAN; s.len()]; n_curves];
    let mut t = vec![vec![f64::NAN; s.len()]; n_curves];
    let mut u = vec![vec![f64::NAN; s.len()]; n_curves];
    let mut truncated = vec![None; n_curves];

    for (i, &tau_i) in tau.iter().enumerate() {
        let mut y = [(problem.x0)(tau_i), (problem.t0)(tau_i), (problem.phi)(tau_i)];
        for j in 0..s.len() {
            if y.iter().any(|v| !v.is_finite()) {
                truncated[i] = Some(j);
                break;
            }
            x[i][j] = y[0];
            t[i][j] = y[1];
            u[i][j] = y[2];
            if j + 1 < s.len() {
                y = problem.rk4_step(y, ds);
            }
        }
    }

    // Jacobian from tau-neighbors at equal s; one-sided at the strip edges.
    let dtau = tau[1] - tau[0];
    let mut delta = vec![vec![f64::NAN; s.len()]; n_curves];
    for i in 0..n_curves {
        for j in 0..s.len() {
            let (dx_dtau, dt_dtau) = if i == 0 {
                ((x[1][j] - x[0][j]) / dtau, (t[1][j] - t[0][j]) / dtau)
            } else if i == n_curves - 1 {
                (
                    (x[i][j] - x[i - 1][j]) / dtau,
                    (t[i][j] - t[i - 1][j]) / dtau,
                )
            } else {
                (
                    (x[i + 1][j] - x[i - 1][j]) / (2.0 * dtau),
                    (t[i + 1][j] - t[i - 1][j]) / (2.0 * dtau),
                )
            };
            let a = (problem.a)(x[i][j], t[i][j], u[i][j]);
            let b = (problem.b)(x[i][j], t[i][j], u[i][j]);
            delta[i][j] = a * dt_dtau - b * dx_dtau;
        }
    }

    Ok(CharacteristicFamily { problem: problem.clone(), tau, s, x, t, u, delta, truncated })
}

impl CharacteristicFamily {
    fn base_ds(&self) -> f64 {
        self.s[1] - self.s[0]
    }

    /// CSV of the whole family: tau,s,x,t,u,delta in (tau, s) row order.
    pub fn to_csv(&self) -> String {
        let n = self.tau.len() * self.s.len();
        let mut cols: [Vec<f64>; 6] = Default::default();
        for c in cols.iter_mut() {
            c.reserve(n);
        }
        for i in 0..self.tau.len() {
            for j in 0..self.s.len() {
                cols[0].push(self.tau[i]);
                cols[1].push(self.s[j]);
                cols[2].push(self.x[i][j]);
                cols[3].push(self.t[i][j]);
                cols[4].push(self.u[i][j]);
                cols[5].push(self.delta[i][j]);
            }
        }
        io::csv_table(
            &["tau", "s", "x", "t", "u", "delta"],
            &[&cols[0], &cols[1], &cols[2], &cols[3], &cols[4], &cols[5]],
        )
    }
}

/// Invert the map (s, tau) -> (x, t) by damped Newton and return u there.
/// The Newton Jacobian determinant is exactly the family's Delta.
pub fn evaluate_solution(family: &CharacteristicFamily, x: f64, t: f64) -> Result<f64> {
    // nearest stored point with a usable Jacobian, as the seed
    let mut best: Option<(f64, f64, f64)> = None; // (dist2, s, tau)
    for i in 0..family.tau.len() {
        for j in 0..family.s.len() {
            let (xs, ts, dl) = (family.x[i][j], family.t[i][j], family.delta[i][j]);
            if !xs.is_finite() || !ts.is_finite() || dl.abs() <= 1e-12 {
                continue;
            }
            let d2 = (xs - x).powi(2) + (ts - t).powi(2);
            if best.map_or(true, |(bd, _, _)| d2 < bd) {
                best = Some((d2, family.s[j], family.tau[i]));
            }
        }
    }
    let (_, mut s, mut tau) = best.ok_or(Error::Uncovered { x, t })?;

    let p = &family.problem;
    let base_ds = family.base_ds();
    let tol = 1e-10 * (1.0 + x.abs() + t.abs());
    let state = |s: f64, tau: f64| p.integrate_to(tau, s, base_ds);

    let mut y = state(s, tau);
    let mut res = ((y[0] - x).powi(2) + (y[1] - t).powi(2)).sqrt();
    for _ in 0..50 {
        if res <= tol {
            return Ok(y[2]);
        }
        // ds column is analytic (the characteristic ODE), dtau by differences
        let dcol_s = p.deriv(y[0], y[1], y[2]);
        let dtau = 1e-6 * (1.0 + tau.abs());
        let yp = state(s, tau + dtau);
        let ym = state(s, tau - dtau);
        let dx_dtau = (yp[0] - ym[0]) / (2.0 * dtau);
        let dt_dtau = (yp[1] - ym[1]) / (2.0 * dtau);
        let det = dcol_s[0] * dt_dtau - dcol_s[1] * dx_dtau;
        if det.abs() < 1e-14 || !det.is_finite() {
            return Err(Error::NoConvergence(format!(
                "Newton Jacobian vanished near (x={x}, t={t}); characteristic point or shock"
            )));
        }
        let (rx, rt) = (y[0] - x, y[1] - t);
        let full_ds = -(rx * dt_dtau - rt * dx_dtau) / det;
        let full_dtau = -(dcol_s[0] * rt - dcol_s[1] * rx) / det;

        // damping: halve until the residual actually drops
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..8 {
            let (s_try, tau_try) = (s + lambda * full_ds, tau + lambda * full_dtau);
            let y_try = state(s_try, tau_try);
            let r_try = ((y_try[0] - x).powi(2) + (y_try[1] - t).powi(2)).sqrt();
            if r_try < res {
                s = s_try;
                tau = tau_try;
                y = y_try;
                res = r_try;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(Error::NoConvergence(format!(
                "Newton stalled at residual {res:.3e} for (x={x}, t={t})"
            )));
        }
    }
    if res <= tol {
        Ok(y[2])
    } else {
        Err(Error::NoConvergence(format!("Newton used 50 iterations at (x={x}, t={t}), residual {res:.3e}")))
    }
}

/// Zeros of Delta(0, tau) on the initial curve, plus a flag when the whole
/// curve is characteristic (Delta identically zero).
pub struct CharacteristicPoints {
    pub taus: Vec<f64>,
    pub fully_characteristic: bool,
}

pub fn detect_characteristic_points(problem: &CharacteristicProblem, n_tau: usize) -> Result<CharacteristicPoints> {
    if n_tau < 2 {
        return Err(Error::InvalidParam(format!("need n_tau >= 2, got {n_tau}")));
    }
    let delta0 = |tau: f64| -> f64 {
        let dtau = 1e-6 * (1.0 + tau.abs());
        let dx = ((problem.x0)(tau + dtau) - (problem.x0)(tau - dtau)) / (2.0 * dtau);
        let dt = ((problem.t0)(tau + dtau) - (problem.t0)(tau - dtau)) / (2.0 * dtau);
        let (x, t, u) = ((problem.x0)(tau), (problem.t0)(tau), (problem.phi)(tau));
        (problem.a)(x, t, u) * dt - (problem.b)(x, t, u) * dx
    };
    let taus: Vec<f64> = (0..=n_tau)
        .map(|i| problem.tau_lo + (problem.tau_hi - problem.tau_lo) * i as f64 / n_tau as f64)
        .collect();
    let vals: Vec<f64> = taus.iter().map(|&tau| delta0(tau)).collect();
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale < 1e-10 {
        return Ok(CharacteristicPoints { taus: Vec::new(), fully_characteristic: true });
    }
    let mut zeros = Vec::new();
    for w in 0..n_tau {
        let (f0, f1) = (vals[w], vals[w + 1]);
        if f0 == 0.0 {
            zeros.push(taus[w]);
        } else if f0 * f1 < 0.0 {
            if let Some(z) = bisect(&delta0, taus[w], taus[w + 1], 1e-10) {
                zeros.push(z);
            }
        }
    }
    if vals[n_tau] == 0.0 {
        zeros.push(taus[n_tau]);
    }
    Ok(CharacteristicPoints { taus: zeros, fully_characteristic: false })
}

/// Solve u = phi(x - u t) by damped Newton, seeded at phi(x). The derivative
/// of phi is taken by central differences.
pub fn burgers_implicit(phi: &Fn1, x: f64, t: f64) -> Result<f64> {
    let g = |u: f64| u - phi(x - u * t);
    let mut u = phi(x);
    let mut r = g(u);
    for _ in 0..100 {
        if r.abs() <= 1e-12 * (1.0 + u.abs()) {
            return Ok(u);
        }
        let arg = x - u * t;
        let d = 1e-7 * (1.0 + arg.abs());
        let dphi = (phi(arg + d) - phi(arg - d)) / (2.0 * d);
        let gp = 1.0 + t * dphi;
        if gp.abs() < 1e-14 || !gp.is_finite() {
            return Err(Error::PostShock(format!(
                "implicit derivative vanished at (x={x}, t={t}); at or past the breaking time"
            )));
        }
        let full = -r / gp;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let u_try = u + lambda * full;
            let r_try = g(u_try);
            if r_try.abs() < r.abs() {
                u = u_try;
                r = r_try;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(Error::NoConvergence(format!("implicit Burgers stalled at (x={x}, t={t})")));
        }
    }
    Err(Error::NoConvergence(format!("implicit Burgers used 100 iterations at (x={x}, t={t})")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShockMethod {
    /// t* = min over tau of -1/phi'(tau).
    AnalyticFormula,
    /// First zero of the integrated Jacobian Delta(s, tau).
    JacobianZero,
}

/// Breaking time of u_t + u u_x = 0 for data phi.
#[derive(Debug, Clone)]
pub struct ShockReport {
    pub t_star: f64,
    pub tau_star: Vec<f64>,
    pub method: ShockMethod,
    /// The minimum sat on the edge of the tau domain (true infimum outside).
    pub boundary_infimum: bool,
}

/// Sample -1/phi' where phi' < -1e-14, refine the local minima by
/// golden-section search, and keep the global minimum. Smooth data with
/// phi' >= 0 everywhere returns t* = +infinity.
pub fn shock_time(
    phi: &Fn1,
    phi_prime: Option<&Fn1>,
    tau_lo: f64,
    tau_hi: f64,
    n: usize,
) -> Result<ShockReport> {
    if n < 100 {
        return Err(Error::InvalidParam(format!("need at least 100 samples, got {n}")));
    }
    if !(tau_hi > tau_lo) {
        return Err(Error::InvalidParam(format!("need tau_lo < tau_hi, got [{tau_lo}, {tau_hi}]")));
    }
    let dphi = |tau: f64| -> f64 {
        match phi_prime {
            Some(p) => p(tau),
            None => {
                let d = 1e-7 * (1.0 + tau.abs());
                (phi(tau + d) - phi(tau - d)) / (2.0 * d)
            }
        }
    };
    // breaking-candidate objective; +inf where the slope is not negative
    let m = |tau: f64| -> f64 {
        let p = dphi(tau);
        if p < -1e-14 {
            -1.0 / p
        } else {
            f64::INFINITY
        }
    };
    let taus: Vec<f64> = (0..=n).map(|i| tau_lo + (tau_hi - tau_lo) * i as f64 / n as f64).collect();
    let vals: Vec<f64> = taus.iter().map(|&tau| m(tau)).collect();
    if vals.iter().all(|v| v.is_infinite()) {
        return Ok(ShockReport {
            t_star: f64::INFINITY,
            tau_star: Vec::new(),
            method: ShockMethod::AnalyticFormula,
            boundary_infimum: false,
        });
    }

    let mut candidates: Vec<(f64, f64)> = Vec::new(); // (t, tau)
    for i in 0..=n {
        if !vals[i].is_finite() {
            continue;
        }
        let left = if i > 0 { vals[i - 1] } else { f64::INFINITY };
        let right = if i < n { vals[i + 1] } else { f64::INFINITY };
        if vals[i] <= left && vals[i] <= right {
            let lo = if i > 0 { taus[i - 1] } else { taus[0] };
            let hi = if i < n { taus[i + 1] } else { taus[n] };
            let (tau_min, t_min) = golden_min(&m, lo, hi, 1e-10);
            candidates.push((t_min, tau_min));
        }
    }
    let t_star = candidates.iter().fold(f64::INFINITY, |acc, &(t, _)| acc.min(t));
    let mut tau_star: Vec<f64> = candidates
        .iter()
        .filter(|&&(t, _)| t <= t_star * (1.0 + 1e-6))
        .map(|&(_, tau)| tau)
        .collect();
    tau_star.sort_by(|a, b| a.partial_cmp(b).unwrap());
    tau_star.dedup_by(|a, b| (*a - *b).abs() < 1e-6 * (1.0 + a.abs()));
    let span = tau_hi - tau_lo;
    let boundary_infimum = tau_star
        .iter()
        .any(|&tau| (tau - tau_lo).abs() < 2.0 * span / n as f64 || (tau_hi - tau).abs() < 2.0 * span / n as f64);
    Ok(ShockReport { t_star, tau_star, method: ShockMethod::AnalyticFormula, boundary_infimum })
}

/// Breaking time read off the integrated family: the earliest t at which
/// Delta(s, tau) changes sign along some curve.
pub fn shock_time_from_family(family: &CharacteristicFamily) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    for i in 0..family.tau.len() {
        for j in 1..family.s.len() {
            let (d0, d1) = (family.delta[i][j - 1], family.delta[i][j]);
            if !d0.is_finite() || !d1.is_finite() || d0 * d1 > 0.0 {
                continue;
            }
            // linear interpolation of the zero crossing in t
            let w = if d0 == d1 { 0.0 } else { d0 / (d0 - d1) };
            let t = family.t[i][j - 1] + w * (family.t[i][j] - family.t[i][j - 1]);
            if best.map_or(true, |(bt, _)| t < bt) {
                best = Some((t, family.tau[i]));
            }
        }
    }
    best
}
