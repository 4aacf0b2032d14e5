//! Stationary-phase asymptotics for oscillatory integrals, the Klein-Gordon
//! far field that follows from them, and group-velocity transport of slowly
//! modulated wave packets, each paired with a direct quadrature companion.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::adaptive_simpson_c;
use crate::roots::bisect;
use crate::{CFn1, Fn1};

/// int f(t) e^{ik phi(t)} dt over a finite range with k large; the phase and
/// its first two derivatives are supplied by the caller.
#[derive(Clone)]
pub struct OscillatoryIntegral {
    pub amplitude: CFn1,
    pub phase: Fn1,
    pub phase_d1: Fn1,
    pub phase_d2: Fn1,
    pub k: f64,
    pub range: (f64, f64),
}

impl OscillatoryIntegral {
    pub fn new(
        amplitude: CFn1,
        phase: Fn1,
        phase_d1: Fn1,
        phase_d2: Fn1,
        k: f64,
        range: (f64, f64),
    ) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidParam(format!("large parameter must be positive, got {k}")));
        }
        if !(range.0 < range.1) {
            return Err(Error::InvalidParam("integration range must have positive width".into()));
        }
        Ok(Self { amplitude, phase, phase_d1, phase_d2, k, range })
    }
}

/// One non-degenerate critical point of the phase with its contribution.
#[derive(Debug, Clone, Copy)]
pub struct StationaryPoint {
    pub location: f64,
    pub curvature: f64,
    pub contribution: Complex64,
}

#[derive(Debug, Clone)]
pub struct StationaryPhaseResult {
    pub value: Complex64,
    pub points: Vec<StationaryPoint>,
    /// No critical point in range: the integral decays faster than any
    /// power of 1/k and the expansion returns zero.
    pub riemann_lebesgue: bool,
}

/// Interior zeros of the phase derivative by sign-change scan plus bisection
/// to 1e-12; endpoint roots are filtered out.
pub fn find_stationary_points<F: Fn(f64) -> f64>(
    phase_d1: F,
    range: (f64, f64),
    n_scan: usize,
) -> Result<Vec<f64>> {
    if !(range.0 < range.1) {
        return Err(Error::InvalidParam("scan range must have positive width".into()));
    }
    if n_scan < 2 {
        return Err(Error::InvalidParam(format!("need at least 2 scan cells, got {n_scan}")));
    }
    let (a, b) = range;
    let step = (b - a) / n_scan as f64;
    let edge = 1e-9 * (b - a);
    let mut roots = Vec::new();
    let mut prev = phase_d1(a);
    for i in 1..=n_scan {
        let t = a + i as f64 * step;
        let cur = phase_d1(t);
        if prev == 0.0 {
            roots.push(t - step);
        } else if prev * cur < 0.0 {
            if let Some(r) = bisect(&phase_d1, t - step, t, 1e-12) {
                roots.push(r);
            }
        }
        prev = cur;
    }
    if prev == 0.0 {
        roots.push(b);
    }
    roots.retain(|r| r - a > edge && b - r > edge);
    roots.dedup_by(|y, x| (*y - *x).abs() < 1e-10 * (1.0 + x.abs()));
    Ok(roots)
}

/// Leading-order expansion: each critical point contributes
/// f(t0) e^{ik phi(t0)} sqrt(2 pi / (k |phi''|)) e^{i pi/4 sgn phi''}.
pub fn stationary_phase_eval(integral: &OscillatoryIntegral) -> Result<StationaryPhaseResult> {
    let locations = find_stationary_points(|t| (integral.phase_d1)(t), integral.range, 2048)?;
    if locations.is_empty() {
        return Ok(StationaryPhaseResult {
            value: Complex64::new(0.0, 0.0),
            points: Vec::new(),
            riemann_lebesgue: true,
        });
    }
    let mut points = Vec::with_capacity(locations.len());
    let mut value = Complex64::new(0.0, 0.0);
    for t0 in locations {
        let curvature = (integral.phase_d2)(t0);
        if curvature.abs() < 1e-10 {
            return Err(Error::Degenerate(format!(
                "degenerate stationary point at t = {t0}: phi'' = {curvature}"
            )));
        }
        let gain = (2.0 * PI / (integral.k * curvature.abs())).sqrt();
        let turn = Complex64::new(0.0, 0.25 * PI * curvature.signum()).exp();
        let carrier = Complex64::new(0.0, integral.k * (integral.phase)(t0)).exp();
        let contribution = (integral.amplitude)(t0) * carrier * gain * turn;
        value += contribution;
        points.push(StationaryPoint { location: t0, curvature, contribution });
    }
    Ok(StationaryPhaseResult { value, points, riemann_lebesgue: false })
}

/// Direct companion evaluation: composite Simpson with at least 40 nodes per
/// oscillation of the full phase k phi.
pub fn oscillatory_quadrature(integral: &OscillatoryIntegral) -> Complex64 {
    let (a, b) = integral.range;
    let probe = 2048usize;
    let mut variation = 0.0;
    let mut prev = (integral.phase)(a);
    for i in 1..=probe {
        let t = a + (b - a) * i as f64 / probe as f64;
        let cur = (integral.phase)(t);
        variation += (cur - prev).abs();
        prev = cur;
    }
    let cycles = integral.k * variation / (2.0 * PI);
    let mut n = ((40.0 * cycles).ceil() as usize).max(400);
    if n % 2 == 1 {
        n += 1;
    }
    let h = (b - a) / n as f64;
    let eval = |t: f64| (integral.amplitude)(t) * Complex64::new(0.0, integral.k * (integral.phase)(t)).exp();
    let mut acc = eval(a) + eval(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += eval(a + i as f64 * h) * w;
    }
    acc * (h / 3.0)
}

/// Relativistic dispersion omega = sqrt(gamma^2 lambda^2 + c^2).
pub fn kg_omega(gamma: f64, c: f64, lambda: f64) -> f64 {
    (gamma * gamma * lambda * lambda + c * c).sqrt()
}

/// d omega / d lambda = gamma^2 lambda / omega; always below gamma.
pub fn kg_group_velocity(gamma: f64, c: f64, lambda: f64) -> f64 {
    gamma * gamma * lambda / kg_omega(gamma, c, lambda)
}

/// Wavenumber whose rays move at speed v = x/t; real only inside the cone.
pub fn kg_stationary_lambda(gamma: f64, c: f64, v: f64) -> Option<f64> {
    if v.abs() >= gamma {
        return None;
    }
    Some(c / gamma * v / (gamma * gamma - v * v).sqrt())
}

#[derive(Debug, Clone, Copy)]
pub struct KgFarField {
    pub value: Complex64,
    pub outside_cone: bool,
    pub lambda_star: Option<f64>,
    pub omega_star: Option<f64>,
}

/// Leading far-field form of the positive-frequency Klein-Gordon integral:
/// (1/sqrt t) F+(l*) (omega''(l*))^{-1/2} e^{i(omega t - l* x + pi/4)},
/// zero outside the light cone.
pub fn kg_farfield<F: Fn(f64) -> Complex64>(
    f_plus: F,
    gamma: f64,
    c: f64,
    x: f64,
    t: f64,
) -> Result<KgFarField> {
    if !(gamma > 0.0 && c > 0.0 && gamma.is_finite() && c.is_finite()) {
        return Err(Error::InvalidParam("need gamma > 0 and c > 0".into()));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidParam(format!("far field needs t > 0, got {t}")));
    }
    let v = x / t;
    let Some(lambda) = kg_stationary_lambda(gamma, c, v) else {
        return Ok(KgFarField {
            value: Complex64::new(0.0, 0.0),
            outside_cone: true,
            lambda_star: None,
            omega_star: None,
        });
    };
    let omega = kg_omega(gamma, c, lambda);
    let curvature = gamma * gamma * c * c / omega.powi(3);
    let phase = Complex64::new(0.0, omega * t - lambda * x + 0.25 * PI).exp();
    let value = f_plus(lambda) / (t * curvature).sqrt() * phase;
    Ok(KgFarField { value, outside_cone: false, lambda_star: Some(lambda), omega_star: Some(omega) })
}

/// Slowly modulated carrier: envelope scale eps, carrier wavenumber k0,
/// dispersion omega = sqrt(gamma^2 l^2 + c^2); c = 0 degenerates to rigid
/// transport at speed gamma.
pub struct WavePacket {
    pub envelope: Fn1,
    pub epsilon: f64,
    pub k0: f64,
    pub gamma: f64,
    pub c: f64,
    // exact() samples the transform at dyadic eta nodes that recur across
    // calls, so caching by bit pattern amortizes the inner quadrature
    transform_cache: Mutex<HashMap<u64, Complex64>>,
}

/// Envelope and spectral windows for the quadrature companion; sized for
/// Gaussian-type envelopes whose tails vanish by |y| = 12.
const PACKET_WINDOW: f64 = 12.0;

impl WavePacket {
    pub fn new(envelope: Fn1, epsilon: f64, k0: f64, gamma: f64, c: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) || !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParam("need eps > 0 and gamma > 0".into()));
        }
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidParam(format!("dispersion mass must be nonnegative, got {c}")));
        }
        if kg_omega(gamma, c, k0) == 0.0 {
            return Err(Error::InvalidParam("carrier frequency vanishes".into()));
        }
        Ok(Self { envelope, epsilon, k0, gamma, c, transform_cache: Mutex::new(HashMap::new()) })
    }

    pub fn carrier_frequency(&self) -> f64 {
        kg_omega(self.gamma, self.c, self.k0)
    }

    pub fn group_velocity(&self) -> f64 {
        kg_group_velocity(self.gamma, self.c, self.k0)
    }

    /// Asymptotic transport: p(eps (x - v_g t)) e^{i(omega0 t - k0 x)}.
    pub fn predicted(&self, x: f64, t: f64) -> Complex64 {
        let envelope = (self.envelope)(self.epsilon * (x - self.group_velocity() * t));
        envelope * Complex64::new(0.0, self.carrier_frequency() * t - self.k0 * x).exp()
    }

    /// Spectral amplitude of the envelope, int p(y) e^{i eta y} dy.
    fn envelope_transform(&self, eta: f64) -> Complex64 {
        if let Some(&hit) = self.transform_cache.lock().unwrap().get(&eta.to_bits()) {
            return hit;
        }
        let value = adaptive_simpson_c(
            |y| (self.envelope)(y) * Complex64::new(0.0, eta * y).exp(),
            -PACKET_WINDOW,
            PACKET_WINDOW,
            1e-11,
        );
        self.transform_cache.lock().unwrap().insert(eta.to_bits(), value);
        value
    }

    /// Exact positive-frequency superposition by quadrature over the
    /// spectral band eta = (lambda - k0) / eps.
    pub fn exact(&self, x: f64, t: f64) -> Complex64 {
        adaptive_simpson_c(
            |eta| {
                let lambda = self.k0 + self.epsilon * eta;
                let phase = kg_omega(self.gamma, self.c, lambda) * t - lambda * x;
                self.envelope_transform(eta) * Complex64::new(0.0, phase).exp()
            },
            -PACKET_WINDOW,
            PACKET_WINDOW,
            1e-9,
        ) / (2.0 * PI)
    }
}
