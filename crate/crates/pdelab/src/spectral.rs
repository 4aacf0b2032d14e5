//! Finite transform machinery: projection onto discrete mode sets, exact
//! per-mode ODE solutions with forcing and boundary terms, Duhamel sources,
//! the periodic disk transform, and the quartic-coupled nonlinear heat
//! truncation with its single-mode Riccati closed form.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, adaptive_simpson_panels};
use crate::{Fn1, Fn2};

/// Orthonormal eigenfunctions M_k with eigenvalues lambda_k in the weighted
/// inner product on (x_lo, x_hi).
#[derive(Clone)]
pub struct ModeSet {
    pub lambda: Vec<f64>,
    modes: Vec<Fn1>,
    // Quadrature panels per mode, one per sign change, so projection
    // integrals never sample an oscillatory mode only at its zeros.
    panels: Vec<usize>,
    pub rho: Fn1,
    pub x_lo: f64,
    pub x_hi: f64,
}

impl ModeSet {
    /// Fixed-end modes sqrt(2/l) sin(pi k x / l) of -c2 d_xx on (0, l).
    pub fn sine(c2: f64, l: f64, k_max: usize) -> Result<Self> {
        if !(c2 > 0.0 && c2.is_finite()) || !(l > 0.0 && l.is_finite()) || k_max == 0 {
            return Err(Error::InvalidParam("sine modes need c2 > 0, l > 0, k_max >= 1".into()));
        }
        let norm = (2.0 / l).sqrt();
        let mut lambda = Vec::with_capacity(k_max);
        let mut modes: Vec<Fn1> = Vec::with_capacity(k_max);
        let mut panels = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            let w = PI * k as f64 / l;
            lambda.push(c2 * w * w);
            modes.push(crate::fn1(move |x| norm * (w * x).sin()));
            panels.push(k);
        }
        Ok(Self { lambda, modes, panels, rho: crate::fn1(|_| 1.0), x_lo: 0.0, x_hi: l })
    }

    pub fn count(&self) -> usize {
        self.lambda.len()
    }

    /// k-th mode, zero-based.
    pub fn mode(&self, k: usize) -> &Fn1 {
        &self.modes[k]
    }

    /// Weighted projections N_k = (u, M_k).
    pub fn project<F: Fn(f64) -> f64>(&self, u: F) -> ModeCoefficients {
        let n = self
            .modes
            .iter()
            .zip(&self.panels)
            .map(|(m, &p)| {
                adaptive_simpson_panels(
                    |x| u(x) * m(x) * (self.rho)(x),
                    self.x_lo,
                    self.x_hi,
                    p,
                    1e-11,
                )
            })
            .collect();
        ModeCoefficients { n }
    }

    /// Truncated synthesis sum N_k M_k.
    pub fn synthesize(&self, coeffs: &ModeCoefficients) -> Result<Fn1> {
        if coeffs.n.len() != self.count() {
            return Err(Error::GridMismatch(format!(
                "{} coefficients for {} modes",
                coeffs.n.len(),
                self.count()
            )));
        }
        let modes = self.modes.clone();
        let n = coeffs.n.clone();
        Ok(crate::fn1(move |x| n.iter().zip(&modes).map(|(nk, m)| nk * m(x)).sum()))
    }

    /// Largest deviation of (M_j, M_k) from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.count() {
            for k in j..self.count() {
                let ip = adaptive_simpson_panels(
                    |x| self.modes[j](x) * self.modes[k](x) * (self.rho)(x),
                    self.x_lo,
                    self.x_hi,
                    self.panels[j].max(self.panels[k]),
                    1e-12,
                );
                let target = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((ip - target).abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeCoefficients {
    pub n: Vec<f64>,
}

impl ModeCoefficients {
    pub fn new(n: Vec<f64>) -> Self {
        Self { n }
    }
}

/// Time dependence of one mode's forcing; the first three have exact
/// convolution primitives, the last falls back to quadrature.
#[derive(Clone)]
pub enum Forcing {
    Zero,
    Const(f64),
    /// amplitude * sin(omega t)
    Sinusoid { amplitude: f64, omega: f64 },
    General(Fn1),
}

impl Forcing {
    pub fn value(&self, t: f64) -> f64 {
        match self {
            Forcing::Zero => 0.0,
            Forcing::Const(c) => *c,
            Forcing::Sinusoid { amplitude, omega } => amplitude * (omega * t).sin(),
            Forcing::General(f) => f(t),
        }
    }
}

/// N' + lambda N = F with N(0) = n0 at time t, via the integrating factor.
pub fn parabolic_mode_value(lambda: f64, n0: f64, forcing: &Forcing, t: f64) -> f64 {
    let free = n0 * (-lambda * t).exp();
    let driven = match forcing {
        Forcing::Zero => 0.0,
        Forcing::Const(c) => {
            if lambda == 0.0 {
                c * t
            } else {
                -c * (-lambda * t).exp_m1() / lambda
            }
        }
        Forcing::Sinusoid { amplitude, omega } => {
            let (w, l) = (*omega, lambda);
            amplitude * (l * (w * t).sin() - w * (w * t).cos() + w * (-l * t).exp()) / (l * l + w * w)
        }
        Forcing::General(f) => {
            adaptive_simpson(|tau| f(tau) * (-lambda * (t - tau)).exp(), 0.0, t, 1e-10)
        }
    };
    free + driven
}

/// Relative detuning below which the sinusoid switches to the resonant form.
const RESONANCE_TOL: f64 = 1e-9;

/// N'' + lambda N = F with N(0) = n0, N'(0) = n0_dot, lambda > 0.
pub fn hyperbolic_mode_value(
    lambda: f64,
    n0: f64,
    n0_dot: f64,
    forcing: &Forcing,
    t: f64,
) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParam(format!("oscillator needs lambda > 0, got {lambda}")));
    }
    let mu = lambda.sqrt();
    let free = n0 * (mu * t).cos() + n0_dot / mu * (mu * t).sin();
    let driven = match forcing {
        Forcing::Zero => 0.0,
        Forcing::Const(c) => c / lambda * (1.0 - (mu * t).cos()),
        Forcing::Sinusoid { amplitude, omega } => {
            let w = *omega;
            if (w - mu).abs() < RESONANCE_TOL * mu {
                // resonant growth, linear in t
                amplitude / (2.0 * mu) * ((mu * t).sin() / mu - t * (mu * t).cos())
            } else {
                amplitude * (w * (mu * t).sin() - mu * (w * t).sin()) / (mu * (w * w - lambda))
            }
        }
        Forcing::General(f) => {
            adaptive_simpson(|tau| f(tau) * (mu * (t - tau)).sin(), 0.0, t, 1e-10) / mu
        }
    };
    Ok(free + driven)
}

fn check_mode_inputs(modes: &ModeSet, n0: &ModeCoefficients, f: &[Forcing], b: &[Forcing]) -> Result<()> {
    let k = modes.count();
    if n0.n.len() != k || f.len() != k || b.len() != k {
        return Err(Error::GridMismatch(format!(
            "expected {k} modes, got n0 {} / F {} / B {}",
            n0.n.len(),
            f.len(),
            b.len()
        )));
    }
    Ok(())
}

/// All first-order modes advanced to time t under source F_k and boundary
/// forcing B_k.
pub fn solve_parabolic_modes(
    modes: &ModeSet,
    n0: &ModeCoefficients,
    f: &[Forcing],
    b: &[Forcing],
    t: f64,
) -> Result<ModeCoefficients> {
    check_mode_inputs(modes, n0, f, b)?;
    let n = modes
        .lambda
        .iter()
        .enumerate()
        .map(|(k, &lam)| {
            parabolic_mode_value(lam, n0.n[k], &f[k], t)
                + parabolic_mode_value(lam, 0.0, &b[k], t)
        })
        .collect();
    Ok(ModeCoefficients { n })
}

/// All second-order modes advanced to time t.
pub fn solve_hyperbolic_modes(
    modes: &ModeSet,
    n0: &ModeCoefficients,
    n0_dot: &ModeCoefficients,
    f: &[Forcing],
    b: &[Forcing],
    t: f64,
) -> Result<ModeCoefficients> {
    check_mode_inputs(modes, n0, f, b)?;
    if n0_dot.n.len() != modes.count() {
        return Err(Error::GridMismatch("initial velocity length mismatch".into()));
    }
    let mut n = Vec::with_capacity(modes.count());
    for (k, &lam) in modes.lambda.iter().enumerate() {
        let v = hyperbolic_mode_value(lam, n0.n[k], n0_dot.n[k], &f[k], t)?
            + hyperbolic_mode_value(lam, 0.0, 0.0, &b[k], t)?;
        n.push(v);
    }
    Ok(ModeCoefficients { n })
}

/// Endpoint gains (z1, z2) so that B_k(t) = z1 g1(t) + z2 g2(t) for the sine
/// basis on (0, l) under Dirichlet data u(0) = g1, u(l) = g2; p = c2,
/// outward normals carry the signs.
pub fn sine_boundary_gains(c2: f64, l: f64, k: usize) -> (f64, f64) {
    let w = PI * k as f64 / l;
    let slope = (2.0 / l).sqrt() * w;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    (c2 * slope, c2 * slope * sign)
}

/// Per-mode boundary forcing closures for time-dependent endpoint data.
pub fn sine_boundary_forcing(c2: f64, l: f64, k_max: usize, g1: Fn1, g2: Fn1) -> Vec<Forcing> {
    (1..=k_max)
        .map(|k| {
            let (z1, z2) = sine_boundary_gains(c2, l, k);
            let (g1, g2) = (g1.clone(), g2.clone());
            Forcing::General(crate::fn1(move |t| z1 * g1(t) + z2 * g2(t)))
        })
        .collect()
}

/// Linear-in-x lift v carrying the endpoint values, with the source and
/// initial-data corrections the substitution w = u - v induces.
pub struct BoundaryLift {
    pub v: Fn2,
    /// Add to the PDE source: -(x g2' + (l - x) g1') / l.
    pub source_shift: Fn2,
    l: f64,
}

pub fn boundary_lift_1d(g1: Fn1, g1_dot: Fn1, g2: Fn1, g2_dot: Fn1, l: f64) -> Result<BoundaryLift> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::InvalidParam(format!("interval length must be positive, got {l}")));
    }
    let (g1v, g2v) = (g1.clone(), g2.clone());
    let v = crate::fn2(move |x, t| (x * g2v(t) + (l - x) * g1v(t)) / l);
    let source_shift = crate::fn2(move |x, t| -(x * g2_dot(t) + (l - x) * g1_dot(t)) / l);
    Ok(BoundaryLift { v, source_shift, l })
}

impl BoundaryLift {
    /// Initial data for the zero-boundary remainder w = u - v.
    pub fn homogenize_initial(&self, f: Fn1) -> Fn1 {
        let v = self.v.clone();
        crate::fn1(move |x| f(x) - v(x, 0.0))
    }

    /// Source seen by the remainder problem.
    pub fn homogenize_source(&self, g: Fn2) -> Fn2 {
        let shift = self.source_shift.clone();
        crate::fn2(move |x, t| g(x, t) + shift(x, t))
    }

    pub fn length(&self) -> f64 {
        self.l
    }
}

/// Particular wave solution from a distributed source: the characteristic
/// triangle average (1/2c) int_0^t int_{x-c(t-s)}^{x+c(t-s)} g.
pub fn duhamel_wave(g: &Fn2, c: f64, x: f64, t: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParam(format!("wave speed must be positive, got {c}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let g = g.clone();
    Ok(adaptive_simpson(
        move |tau| {
            let r = c * (t - tau);
            adaptive_simpson(|theta| g(theta, tau), x - r, x + r, 1e-10)
        },
        0.0,
        t,
        1e-8,
    ) / (2.0 * c))
}

/// Forced heat solution on (0, l) with zero data: per-mode convolution of the
/// projected source, then synthesis.
pub fn duhamel_heat(g: Fn2, c: f64, l: f64, k_max: usize) -> Result<Fn2> {
    let modes = ModeSet::sine(c * c, l, k_max)?;
    Ok(crate::fn2(move |x, t| {
        let mut acc = 0.0;
        for (k, &lam) in modes.lambda.iter().enumerate() {
            let m = modes.mode(k).clone();
            let g = g.clone();
            let nk = adaptive_simpson(
                |tau| {
                    let ak = adaptive_simpson_panels(|s| g(s, tau) * m(s), 0.0, l, k + 1, 1e-10);
                    ak * (-lam * (t - tau)).exp()
                },
                0.0,
                t,
                1e-8,
            );
            acc += nk * modes.mode(k)(x);
        }
        acc
    }))
}

/// Angular transform coefficients on the periodic circle.
#[derive(Debug, Clone)]
pub struct AngularCoeffs {
    pub a0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

const DISK_NODES: usize = 1024;

/// Project u(theta) on the constant, cosine, and sine circle modes; the
/// periodic trapezoid rule is spectrally accurate here.
pub fn disk_transform<F: Fn(f64) -> f64>(u: F, k_max: usize) -> AngularCoeffs {
    let h = 2.0 * PI / DISK_NODES as f64;
    let samples: Vec<(f64, f64)> = (0..DISK_NODES)
        .map(|j| {
            let theta = j as f64 * h;
            (theta, u(theta))
        })
        .collect();
    let a0 = samples.iter().map(|(_, v)| v).sum::<f64>() * h / (2.0 * PI).sqrt();
    let mut a = Vec::with_capacity(k_max);
    let mut b = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let kf = k as f64;
        let ca = samples.iter().map(|(th, v)| v * (kf * th).cos()).sum::<f64>() * h / PI.sqrt();
        let cb = samples.iter().map(|(th, v)| v * (kf * th).sin()).sum::<f64>() * h / PI.sqrt();
        a.push(ca);
        b.push(cb);
    }
    AngularCoeffs { a0, a, b }
}

/// Truncated synthesis back from the angular coefficients.
pub fn disk_inverse(coeffs: &AngularCoeffs) -> Fn1 {
    let c = coeffs.clone();
    crate::fn1(move |theta| {
        let mut acc = c.a0 / (2.0 * PI).sqrt();
        for (j, (ak, bk)) in c.a.iter().zip(&c.b).enumerate() {
            let kf = (j + 1) as f64;
            acc += (ak * (kf * theta).cos() + bk * (kf * theta).sin()) / PI.sqrt();
        }
        acc
    })
}

/// Eigenvalue k^2 of the angular operator; each k >= 1 carries a cosine and
/// a sine mode.
pub fn periodic_eigenvalue(k: usize) -> f64 {
    (k * k) as f64
}

/// Quartic couplings of the normalized sine modes on (0, pi), indexed
/// a[k][i][j][l], one-based; symmetric in (i, j, l).
pub struct CouplingTensor {
    pub k_max: usize,
    data: Vec<f64>,
}

impl CouplingTensor {
    fn idx(&self, k: usize, i: usize, j: usize, l: usize) -> usize {
        debug_assert!((1..=self.k_max).contains(&k));
        let m = self.k_max;
        (((k - 1) * m + (i - 1)) * m + (j - 1)) * m + (l - 1)
    }

    pub fn get(&self, k: usize, i: usize, j: usize, l: usize) -> f64 {
        self.data[self.idx(k, i, j, l)]
    }
}

const GALERKIN_K_CAP: usize = 32;

fn coupling_cache() -> &'static Mutex<HashMap<usize, Arc<CouplingTensor>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CouplingTensor>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Quadruple-product integrals over (0, pi), one quadrature per unordered
/// (i, j, l); results are cached per truncation size.
pub fn galerkin_couplings(k_max: usize) -> Result<Arc<CouplingTensor>> {
    if k_max == 0 || k_max > GALERKIN_K_CAP {
        return Err(Error::InvalidParam(format!(
            "coupling truncation must be in 1..={GALERKIN_K_CAP}, got {k_max}"
        )));
    }
    if let Some(t) = coupling_cache().lock().unwrap().get(&k_max) {
        return Ok(t.clone());
    }
    let norm = (2.0 / PI).sqrt();
    let mode = move |k: usize, x: f64| norm * (k as f64 * x).sin();
    let mut tensor = CouplingTensor { k_max, data: vec![0.0; k_max.pow(4)] };
    for k in 1..=k_max {
        for i in 1..=k_max {
            for j in i..=k_max {
                for l in j..=k_max {
                    let value = adaptive_simpson_panels(
                        |x| mode(i, x) * mode(j, x) * mode(l, x) * mode(k, x),
                        0.0,
                        PI,
                        i.max(j).max(l).max(k),
                        1e-12,
                    );
                    // scatter over the six orderings of (i, j, l)
                    for (a, b, c) in
                        [(i, j, l), (i, l, j), (j, i, l), (j, l, i), (l, i, j), (l, j, i)]
                    {
                        let at = tensor.idx(k, a, b, c);
                        tensor.data[at] = value;
                    }
                }
            }
        }
    }
    let arc = Arc::new(tensor);
    coupling_cache().lock().unwrap().insert(k_max, arc.clone());
    Ok(arc)
}

/// Truncated cubic-interaction system for the scaled reaction-diffusion
/// problem: N_k' = (lambda_hat - k^2) N_k - lambda_hat eps^2 sum a N N N.
pub struct GalerkinSystem {
    pub lambda_hat: f64,
    pub epsilon: f64,
    pub k_max: usize,
    tensor: Arc<CouplingTensor>,
}

impl GalerkinSystem {
    pub fn new(lambda_hat: f64, epsilon: f64, k_max: usize) -> Result<Self> {
        if !lambda_hat.is_finite() || !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidParam("lambda_hat and epsilon must be finite".into()));
        }
        Ok(Self { lambda_hat, epsilon, k_max, tensor: galerkin_couplings(k_max)? })
    }

    fn rhs(&self, n: &[f64], out: &mut [f64]) {
        let (lh, e2) = (self.lambda_hat, self.epsilon * self.epsilon);
        for k in 1..=self.k_max {
            let mut cubic = 0.0;
            for i in 1..=self.k_max {
                for j in 1..=self.k_max {
                    for l in 1..=self.k_max {
                        let a = self.tensor.get(k, i, j, l);
                        if a != 0.0 {
                            cubic += a * n[i - 1] * n[j - 1] * n[l - 1];
                        }
                    }
                }
            }
            out[k - 1] = (lh - (k * k) as f64) * n[k - 1] - lh * e2 * cubic;
        }
    }
}

pub const GALERKIN_BLOW_UP: f64 = 1e8;

#[derive(Debug, Clone)]
pub struct ModeTrajectories {
    pub times: Vec<f64>,
    /// states[s][k] is mode k+1 at times[s].
    pub states: Vec<Vec<f64>>,
    /// (time, amplitude) at the first crossing of the blow-up threshold.
    pub blow_up: Option<(f64, f64)>,
}

impl ModeTrajectories {
    pub fn last(&self) -> (&f64, &Vec<f64>) {
        (self.times.last().unwrap(), self.states.last().unwrap())
    }

    pub fn max_abs_of_mode(&self, k: usize) -> f64 {
        self.states.iter().map(|s| s[k].abs()).fold(0.0, f64::max)
    }
}

/// Integrate the truncated system by RK4 with the step tied to the fastest
/// linear-plus-cubic rate; stops early on blow-up.
pub fn nonlinear_heat_galerkin(
    system: &GalerkinSystem,
    n0: &[f64],
    t_end: f64,
) -> Result<ModeTrajectories> {
    if n0.len() != system.k_max {
        return Err(Error::GridMismatch(format!(
            "{} initial modes for truncation {}",
            n0.len(),
            system.k_max
        )));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParam(format!("horizon must be positive, got {t_end}")));
    }
    let k = system.k_max;
    // worst-case |a| row sum for the cubic rate bound
    let mut a_row = 0.0f64;
    for kk in 1..=k {
        let mut s = 0.0;
        for i in 1..=k {
            for j in 1..=k {
                for l in 1..=k {
                    s += system.tensor.get(kk, i, j, l).abs();
                }
            }
        }
        a_row = a_row.max(s);
    }
    let linear_rate = (1..=k)
        .map(|kk| (system.lambda_hat - (kk * kk) as f64).abs())
        .fold(0.0, f64::max)
        .max(1e-3);

    let mut n = n0.to_vec();
    let mut t = 0.0;
    let mut times = vec![0.0];
    let mut states = vec![n.clone()];
    let mut blow_up = None;
    let mut buf = [vec![0.0; k], vec![0.0; k], vec![0.0; k], vec![0.0; k]];
    let mut stage = vec![0.0; k];
    while t < t_end {
        let amp = n.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let rate = linear_rate
            + system.lambda_hat.abs() * system.epsilon * system.epsilon * a_row * amp * amp;
        // 1/20 of the stiffest rate keeps the RK4 trajectory within ~1e-7 of
        // the single-mode closed form through the transient
        let dt = (0.05 / rate).min(t_end - t);
        system.rhs(&n, &mut buf[0]);
        for i in 0..k {
            stage[i] = n[i] + 0.5 * dt * buf[0][i];
        }
        system.rhs(&stage, &mut buf[1]);
        for i in 0..k {
            stage[i] = n[i] + 0.5 * dt * buf[1][i];
        }
        system.rhs(&stage, &mut buf[2]);
        for i in 0..k {
            stage[i] = n[i] + dt * buf[2][i];
        }
        system.rhs(&stage, &mut buf[3]);
        for i in 0..k {
            n[i] += dt / 6.0 * (buf[0][i] + 2.0 * buf[1][i] + 2.0 * buf[2][i] + buf[3][i]);
        }
        t += dt;
        times.push(t);
        states.push(n.clone());
        let peak = n.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !peak.is_finite() || peak > GALERKIN_BLOW_UP {
            blow_up = Some((t, peak));
            break;
        }
    }
    Ok(ModeTrajectories { times, states, blow_up })
}

/// Closed-form first-mode amplitude of the truncated system (K = 1), stable
/// against overflow for long horizons.
pub fn riccati_single_mode(lambda_hat: f64, epsilon: f64, n0: f64, t: f64) -> Result<f64> {
    if (lambda_hat - 1.0).abs() < 1e-12 {
        return Err(Error::InvalidParam("growth rate vanishes at lambda_hat = 1".into()));
    }
    let g = lambda_hat - 1.0;
    let c = 3.0 * lambda_hat * epsilon * epsilon * n0 * n0 / (2.0 * PI * g);
    if g > 0.0 {
        // divide through by e^{2gt} so nothing overflows
        Ok(n0 / ((-2.0 * g * t).exp() * (1.0 - c) + c).sqrt())
    } else {
        Ok(n0 * (g * t).exp() / (1.0 + c * ((2.0 * g * t).exp() - 1.0)).sqrt())
    }
}

/// Late-time limit of the single-mode amplitude; zero in the decaying
/// regime, the saturation value beyond it.
pub fn stationary_limit(lambda_hat: f64, epsilon: f64, sign: f64) -> Result<f64> {
    if (lambda_hat - 1.0).abs() < 1e-12 {
        return Err(Error::InvalidParam("growth rate vanishes at lambda_hat = 1".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParam("saturation needs epsilon > 0".into()));
    }
    if lambda_hat < 1.0 {
        return Ok(0.0);
    }
    Ok(sign.signum() * (2.0 * PI * (lambda_hat - 1.0) / (3.0 * lambda_hat * epsilon * epsilon)).sqrt())
}

/// Spatially uniform companion solution eps e^{lt} / sqrt(1 + eps^2(e^{2lt}-1)).
pub fn uniform_mode_growth(lambda_hat: f64, epsilon: f64, t: f64) -> f64 {
    let e2 = epsilon * epsilon;
    if lambda_hat > 0.0 {
        epsilon / ((-2.0 * lambda_hat * t).exp() * (1.0 - e2) + e2).sqrt()
    } else {
        epsilon * (lambda_hat * t).exp()
            / (1.0 + e2 * ((2.0 * lambda_hat * t).exp() - 1.0)).sqrt()
    }
}
