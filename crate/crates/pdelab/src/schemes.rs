//! Time-stepping finite-difference solvers for the 1-d heat, wave, and
//! first-order advection equations. Instability is data here, not a crash:
//! every solver watches the max norm and flags blow-up past 1e8.

use crate::error::{Error, Result};
use crate::grid::{GridFunction, TimeAxis, UniformGrid1D};
use crate::sparse::solve_tridiagonal;
use crate::{fn2, Fn1, Fn2, Fn3};

pub const BLOW_UP_THRESHOLD: f64 = 1e8;

/// Boundary condition at one endpoint, as a function of time.
#[derive(Clone)]
pub enum Boundary {
    Dirichlet(Fn1),
    Neumann(Fn1),
}

#[derive(Clone)]
pub struct BoundarySpec {
    pub lo: Boundary,
    pub hi: Boundary,
}

impl BoundarySpec {
    pub fn dirichlet(lo: Fn1, hi: Fn1) -> Self {
        Self { lo: Boundary::Dirichlet(lo), hi: Boundary::Dirichlet(hi) }
    }

    pub fn neumann(lo: Fn1, hi: Fn1) -> Self {
        Self { lo: Boundary::Neumann(lo), hi: Boundary::Neumann(hi) }
    }

    pub fn homogeneous_dirichlet() -> Self {
        Self::dirichlet(crate::fn1(|_| 0.0), crate::fn1(|_| 0.0))
    }

    fn dirichlet_pair(&self) -> Result<(&Fn1, &Fn1)> {
        match (&self.lo, &self.hi) {
            (Boundary::Dirichlet(a), Boundary::Dirichlet(b)) => Ok((a, b)),
            _ => Err(Error::UnsupportedBoundary(
                "this solver handles Dirichlet conditions at both endpoints".into(),
            )),
        }
    }

    fn neumann_pair(&self) -> Result<(&Fn1, &Fn1)> {
        match (&self.lo, &self.hi) {
            (Boundary::Neumann(a), Boundary::Neumann(b)) => Ok((a, b)),
            _ => Err(Error::UnsupportedBoundary(
                "this solver handles Neumann conditions at both endpoints".into(),
            )),
        }
    }
}

/// u_t = c^2 u_xx + rho on a 1-d grid.
#[derive(Clone)]
pub struct HeatProblem {
    pub c2: f64,
    pub grid: UniformGrid1D,
    pub time: TimeAxis,
    pub phi: Fn1,
    pub boundary: BoundarySpec,
    pub source: Fn2,
}

impl HeatProblem {
    pub fn new(
        c2: f64,
        grid: UniformGrid1D,
        time: TimeAxis,
        phi: Fn1,
        boundary: BoundarySpec,
        source: Option<Fn2>,
    ) -> Result<Self> {
        if !(c2 > 0.0) || !c2.is_finite() {
            return Err(Error::InvalidParam(format!("diffusivity c^2 must be positive, got {c2}")));
        }
        Ok(Self { c2, grid, time, phi, boundary, source: source.unwrap_or_else(|| fn2(|_, _| 0.0)) })
    }

    /// Mesh ratio s = c^2 k / h^2.
    pub fn s(&self) -> f64 {
        let h = self.grid.h();
        self.c2 * self.time.dt / (h * h)
    }
}

/// u_tt = c^2 u_xx + rho with Dirichlet ends.
#[derive(Clone)]
pub struct WaveProblem {
    pub c: f64,
    pub grid: UniformGrid1D,
    pub time: TimeAxis,
    pub phi: Fn1,
    pub psi: Fn1,
    pub boundary: BoundarySpec,
    pub source: Fn2,
}

impl WaveProblem {
    pub fn new(
        c: f64,
        grid: UniformGrid1D,
        time: TimeAxis,
        phi: Fn1,
        psi: Fn1,
        boundary: BoundarySpec,
        source: Option<Fn2>,
    ) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidParam(format!("wave speed c must be positive, got {c}")));
        }
        Ok(Self { c, grid, time, phi, psi, boundary, source: source.unwrap_or_else(|| fn2(|_, _| 0.0)) })
    }

    /// Mesh ratio s = c^2 k^2 / h^2.
    pub fn s(&self) -> f64 {
        let h = self.grid.h();
        let r = self.c * self.time.dt / h;
        r * r
    }
}

/// a(x,t) u_t + b(x,t,u) u_x = rho(x,t); data must stay away from the ends.
#[derive(Clone)]
pub struct AdvectionProblem {
    pub a: Fn2,
    pub b: Fn3,
    pub grid: UniformGrid1D,
    pub time: TimeAxis,
    pub phi: Fn1,
    pub source: Fn2,
}

/// Snapshot trail of a solve, plus instability bookkeeping.
#[derive(Debug, Clone)]
pub struct Evolution {
    pub snapshots: Vec<(f64, GridFunction)>,
    /// First (step, max |u|) past the blow-up threshold; stepping stops there.
    pub blow_up: Option<(usize, f64)>,
    /// First step whose outer 5% zones carry more than 1e-6 of the max norm.
    pub edge_warning: Option<usize>,
}

impl Evolution {
    pub fn last(&self) -> Option<&(f64, GridFunction)> {
        self.snapshots.last()
    }
}

/// Tracks layers, records requested snapshots, and watches for blow-up.
struct Recorder<'a> {
    time: &'a TimeAxis,
    wanted: Vec<usize>,
    evo: Evolution,
}

impl<'a> Recorder<'a> {
    fn new(time: &'a TimeAxis, snapshot_steps: &[usize]) -> Self {
        let mut wanted: Vec<usize> = snapshot_steps.iter().copied().filter(|&n| n <= time.n_steps).collect();
        wanted.sort_unstable();
        wanted.dedup();
        Self { time, wanted, evo: Evolution { snapshots: Vec::new(), blow_up: None, edge_warning: None } }
    }

    /// Record layer n if requested; returns false when stepping must stop.
    fn layer(&mut self, n: usize, grid: &UniformGrid1D, u: &[f64]) -> bool {
        let max = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let bad = !max.is_finite() || max > BLOW_UP_THRESHOLD || u.iter().any(|v| v.is_nan());
        if bad && self.evo.blow_up.is_none() {
            self.evo.blow_up = Some((n, max));
        }
        if self.wanted.binary_search(&n).is_ok() || bad {
            let gf = GridFunction { grid: grid.clone(), values: u.to_vec() };
            self.evo.snapshots.push((self.time.t(n), gf));
        }
        !bad
    }

    fn warn_edges(&mut self, n: usize, u: &[f64]) {
        if self.evo.edge_warning.is_some() {
            return;
        }
        let len = u.len();
        let zone = (len as f64 * 0.05).ceil() as usize;
        let max = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max == 0.0 {
            return;
        }
        let edge = u[..zone.min(len)]
            .iter()
            .chain(u[len - zone.min(len)..].iter())
            .fold(0.0f64, |m, v| m.max(v.abs()));
        if edge > 1e-6 * max {
            self.evo.edge_warning = Some(n);
        }
    }

    fn finish(self) -> Evolution {
        self.evo
    }
}

/// Forward-Euler heat step; stable only for s <= 1/2.
pub fn heat_explicit(problem: &HeatProblem, snapshot_steps: &[usize]) -> Result<Evolution> {
    let (g_lo, g_hi) = problem.boundary.dirichlet_pair()?;
    let grid = &problem.grid;
    let n = grid.n_cells;
    let (k, s) = (problem.time.dt, problem.s());
    let mut u = GridFunction::sample(grid.clone(), |x| (problem.phi)(x))?.values;
    let mut rec = Recorder::new(&problem.time, snapshot_steps);
    if !rec.layer(0, grid, &u) {
        return Ok(rec.finish());
    }
    let mut next = vec![0.0; n + 1];
    for step in 0..problem.time.n_steps {
        let t = problem.time.t(step);
        for i in 1..n {
            let x = grid.node(i);
            next[i] = s * (u[i + 1] + u[i - 1]) + (1.0 - 2.0 * s) * u[i] + k * (problem.source)(x, t);
        }
        let t1 = problem.time.t(step + 1);
        next[0] = g_lo(t1);
        next[n] = g_hi(t1);
        std::mem::swap(&mut u, &mut next);
        if !rec.layer(step + 1, grid, &u) {
            break;
        }
    }
    Ok(rec.finish())
}

/// Theta-weighted implicit heat step: Q=0 explicit, Q=1/2 Crank-Nicolson,
/// Q=1 backward Euler. Unconditionally stable once 1 - 2Q <= 0.
pub fn heat_qscheme(problem: &HeatProblem, q: f64, snapshot_steps: &[usize]) -> Result<Evolution> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParam(format!("Q must lie in [0, 1], got {q}")));
    }
    let (g_lo, g_hi) = problem.boundary.dirichlet_pair()?;
    let grid = &problem.grid;
    let n = grid.n_cells;
    if n < 2 {
        return Err(Error::InvalidParam("Q-scheme needs at least one interior node".into()));
    }
    let (k, s) = (problem.time.dt, problem.s());
    let mut u = GridFunction::sample(grid.clone(), |x| (problem.phi)(x))?.values;
    let mut rec = Recorder::new(&problem.time, snapshot_steps);
    if !rec.layer(0, grid, &u) {
        return Ok(rec.finish());
    }

    let m = n - 1;
    let lower = vec![-s * q; m - 1];
    let diag = vec![1.0 + 2.0 * s * q; m];
    let upper = vec![-s * q; m - 1];
    let mut rhs = vec![0.0; m];

    for step in 0..problem.time.n_steps {
        let t = problem.time.t(step);
        let t1 = problem.time.t(step + 1);
        let (blo, bhi) = (g_lo(t1), g_hi(t1));
        for i in 1..n {
            let x = grid.node(i);
            let delta2 = u[i + 1] - 2.0 * u[i] + u[i - 1];
            // Crank-Nicolson keeps order 2 with the time-averaged source.
            let rho = if q > 0.0 {
                0.5 * ((problem.source)(x, t) + (problem.source)(x, t1))
            } else {
                (problem.source)(x, t)
            };
            rhs[i - 1] = u[i] + s * (1.0 - q) * delta2 + k * rho;
        }
        rhs[0] += s * q * blo;
        rhs[m - 1] += s * q * bhi;
        let interior = solve_tridiagonal(&lower, &diag, &upper, &rhs)?;
        u[0] = blo;
        u[1..n].copy_from_slice(&interior);
        u[n] = bhi;
        if !rec.layer(step + 1, grid, &u) {
            break;
        }
    }
    Ok(rec.finish())
}

/// Explicit heat step with Neumann data at both ends via ghost points
/// u_{-1} = u_1 - 2h f and u_{N+1} = u_{N-1} + 2h g.
pub fn heat_explicit_neumann(problem: &HeatProblem, snapshot_steps: &[usize]) -> Result<Evolution> {
    let (f_lo, g_hi) = problem.boundary.neumann_pair()?;
    let grid = &problem.grid;
    let n = grid.n_cells;
    let (h, k, s) = (grid.h(), problem.time.dt, problem.s());
    let mut u = GridFunction::sample(grid.clone(), |x| (problem.phi)(x))?.values;
    let mut rec = Recorder::new(&problem.time, snapshot_steps);
    if !rec.layer(0, grid, &u) {
        return Ok(rec.finish());
    }
    let mut next = vec![0.0; n + 1];
    for step in 0..problem.time.n_steps {
        let t = problem.time.t(step);
        let ghost_lo = u[1] - 2.0 * h * f_lo(t);
        let ghost_hi = u[n - 1] + 2.0 * h * g_hi(t);
        for i in 0..=n {
            let x = grid.node(i);
            let (left, right) = match i {
                0 => (ghost_lo, u[1]),
                _ if i == n => (u[n - 1], ghost_hi),
                _ => (u[i - 1], u[i + 1]),
            };
            next[i] = s * (left + right) + (1.0 - 2.0 * s) * u[i] + k * (problem.source)(x, t);
        }
        std::mem::swap(&mut u, &mut next);
        if !rec.layer(step + 1, grid, &u) {
            break;
        }
    }
    Ok(rec.finish())
}

/// Leapfrog wave solver; the first layer uses the second-order start
/// u^1 = s/2 (phi_+ + phi_-) + (1-s) phi + k psi + k^2/2 rho(x, 0).
pub fn wave_leapfrog(problem: &WaveProblem, snapshot_steps: &[usize]) -> Result<Evolution> {
    let (g_lo, g_hi) = problem.boundary.dirichlet_pair()?;
    let grid = &problem.grid;
    let n = grid.n_cells;
    if n < 2 {
        return Err(Error::InvalidParam("wave solver needs at least one interior node".into()));
    }
    let (k, s) = (problem.time.dt, problem.s());
    let phi = GridFunction::sample(grid.clone(), |x| (problem.phi)(x))?.values;
    let psi = GridFunction::sample(grid.clone(), |x| (problem.psi)(x))?.values;

    let mut rec = Recorder::new(&problem.time, snapshot_steps);
    if !rec.layer(0, grid, &phi) {
        return Ok(rec.finish());
    }

    let mut prev = phi.clone();
    let mut cur = vec![0.0; n + 1];
    if problem.time.n_steps == 0 {
        return Ok(rec.finish());
    }
    for i in 1..n {
        // k^2/2 rho(x, 0) completes the Taylor start; dropping it would act
        // as an O(k) velocity error and cost the scheme an order
        cur[i] = 0.5 * s * (phi[i + 1] + phi[i - 1]) + (1.0 - s) * phi[i] + k * psi[i]
            + 0.5 * k * k * (problem.source)(grid.node(i), 0.0);
    }
    cur[0] = g_lo(problem.time.t(1));
    cur[n] = g_hi(problem.time.t(1));
    if !rec.layer(1, grid, &cur) {
        return Ok(rec.finish());
    }

    let mut next = vec![0.0; n + 1];
    for step in 1..problem.time.n_steps {
        let t = problem.time.t(step);
        for i in 1..n {
            let x = grid.node(i);
            next[i] = s * (cur[i + 1] + cur[i - 1]) + 2.0 * (1.0 - s) * cur[i] - prev[i]
                + k * k * (problem.source)(x, t);
        }
        let t1 = problem.time.t(step + 1);
        next[0] = g_lo(t1);
        next[n] = g_hi(t1);
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
        if !rec.layer(step + 1, grid, &cur) {
            break;
        }
    }
    Ok(rec.finish())
}

/// Centered leapfrog for a u_t + b u_x = rho, endpoints pinned to zero; the
/// startup layer is one upwind Euler step. Warns (in the Evolution) when the
/// solution reaches the outer 5% of the domain.
pub fn advection_leapfrog(problem: &AdvectionProblem, snapshot_steps: &[usize]) -> Result<Evolution> {
    let grid = &problem.grid;
    let n = grid.n_cells;
    if n < 3 {
        return Err(Error::InvalidParam("advection solver needs at least two interior nodes".into()));
    }
    let (h, k) = (grid.h(), problem.time.dt);
    let phi = GridFunction::sample(grid.clone(), |x| (problem.phi)(x))?.values;

    let a_at = |x: f64, t: f64| -> Result<f64> {
        let a = (problem.a)(x, t);
        if a == 0.0 || !a.is_finite() {
            return Err(Error::InvalidParam(format!("coefficient a(x={x}, t={t}) = {a}")));
        }
        Ok(a)
    };

    let mut rec = Recorder::new(&problem.time, snapshot_steps);
    rec.warn_edges(0, &phi);
    if !rec.layer(0, grid, &phi) {
        return Ok(rec.finish());
    }
    if problem.time.n_steps == 0 {
        return Ok(rec.finish());
    }

    // Startup: upwind Euler, damping the layer the leapfrog cannot produce.
    let mut prev = phi.clone();
    let mut cur = vec![0.0; n + 1];
    for i in 1..n {
        let x = grid.node(i);
        let a = a_at(x, 0.0)?;
        let b = (problem.b)(x, 0.0, phi[i]);
        let speed = b / a;
        let dphi = if speed >= 0.0 { (phi[i] - phi[i - 1]) / h } else { (phi[i + 1] - phi[i]) / h };
        cur[i] = phi[i] + k * ((problem.source)(x, 0.0) / a - speed * dphi);
    }
    rec.warn_edges(1, &cur);
    if !rec.layer(1, grid, &cur) {
        return Ok(rec.finish());
    }

    let mut next = vec![0.0; n + 1];
    for step in 1..problem.time.n_steps {
        let t = problem.time.t(step);
        for i in 1..n {
            let x = grid.node(i);
            let a = a_at(x, t)?;
            let b = (problem.b)(x, t, cur[i]);
            next[i] = prev[i] - (k / h) * (b / a) * (cur[i + 1] - cur[i - 1])
                + 2.0 * k * (problem.source)(x, t) / a;
        }
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
        rec.warn_edges(step + 1, &cur);
        if !rec.layer(step + 1, grid, &cur) {
            break;
        }
    }
    Ok(rec.finish())
}

/// Build a heat problem whose exact solution is the supplied u, by moving
/// u_t - c^2 u_xx into the source and tracing u on the data surfaces.
pub fn manufactured_heat_problem(
    c2: f64,
    grid: UniformGrid1D,
    time: TimeAxis,
    u: Fn2,
    u_t: Fn2,
    u_xx: Fn2,
) -> Result<HeatProblem> {
    let (x_lo, x_hi) = (grid.x_lo, grid.x_hi);
    let phi = {
        let u = u.clone();
        crate::fn1(move |x| u(x, 0.0))
    };
    let boundary = BoundarySpec::dirichlet(
        {
            let u = u.clone();
            crate::fn1(move |t| u(x_lo, t))
        },
        {
            let u = u.clone();
            crate::fn1(move |t| u(x_hi, t))
        },
    );
    let source = fn2(move |x, t| u_t(x, t) - c2 * u_xx(x, t));
    HeatProblem::new(c2, grid, time, phi, boundary, Some(source))
}

/// Wave-equation analogue: source u_tt - c^2 u_xx, initial data (u, u_t).
#[allow(clippy::too_many_arguments)]
pub fn manufactured_wave_problem(
    c: f64,
    grid: UniformGrid1D,
    time: TimeAxis,
    u: Fn2,
    u_t: Fn2,
    u_tt: Fn2,
    u_xx: Fn2,
) -> Result<WaveProblem> {
    let (x_lo, x_hi) = (grid.x_lo, grid.x_hi);
    let phi = {
        let u = u.clone();
        crate::fn1(move |x| u(x, 0.0))
    };
    let psi = crate::fn1(move |x| u_t(x, 0.0));
    let boundary = BoundarySpec::dirichlet(
        {
            let u = u.clone();
            crate::fn1(move |t| u(x_lo, t))
        },
        {
            let u = u.clone();
            crate::fn1(move |t| u(x_hi, t))
        },
    );
    let c2 = c * c;
    let source = fn2(move |x, t| u_tt(x, t) - c2 * u_xx(x, t));
    WaveProblem::new(c, grid, time, phi, psi, boundary, Some(source))
}
