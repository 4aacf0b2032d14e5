//! Analytic reference solutions: d'Alembert, separation-of-variables series,
//! heat kernels with image systems, half-plane potentials, exponential Green
//! functions, Legendre polynomials, and a Sturm-Liouville shooting solver.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{GridFunction, UniformGrid1D};
use crate::quad::{adaptive_simpson, adaptive_simpson_panels, composite_simpson_nodes};
use crate::roots::bisect;
use crate::{Fn1, Fn2};

/// Error function by the all-positive rescaled Maclaurin series; accurate to
/// a few ulp over the whole line.
pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x >= 6.0 {
        return 1.0;
    }
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        let next = sum + term;
        if next == sum {
            break;
        }
        sum = next;
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

/// Traveling-wave solution of u_tt = c^2 u_xx on the line with u(x,0) = f,
/// u_t(x,0) = g.
pub fn dalembert(f: Fn1, g: Fn1, c: f64) -> Result<Fn2> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParam(format!("wave speed must be positive, got {c}")));
    }
    Ok(crate::fn2(move |x, t| {
        let (lo, hi) = (x - c * t, x + c * t);
        let travel = 0.5 * (f(lo) + f(hi));
        let (a, b, sign) = if lo <= hi { (lo, hi, 1.0) } else { (hi, lo, -1.0) };
        travel + sign * adaptive_simpson(|s| g(s), a, b, 1e-10) / (2.0 * c)
    }))
}

const SL_STEPS: usize = 2000;
const SL_SCAN: usize = 1000;

/// Regular problem -(p u')' + q u = lambda rho u on (0, l) with separated
/// conditions alpha1 u(0) = beta1 u'(0) and alpha2 u(l) + beta2 u'(l) = 0.
#[derive(Clone)]
pub struct SlProblem {
    pub p: Fn1,
    pub q: Fn1,
    pub rho: Fn1,
    pub l: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha2: f64,
    pub beta2: f64,
}

impl SlProblem {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p: Fn1,
        q: Fn1,
        rho: Fn1,
        l: f64,
        alpha1: f64,
        beta1: f64,
        alpha2: f64,
        beta2: f64,
    ) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::InvalidParam(format!("interval length must be positive, got {l}")));
        }
        if !(alpha1 + beta1 > 0.0) || !(alpha2 + beta2 > 0.0) {
            return Err(Error::InvalidParam("boundary weights must satisfy alpha + beta > 0".into()));
        }
        for i in 0..=128 {
            let x = l * i as f64 / 128.0;
            if !(p(x) > 0.0) || !(rho(x) > 0.0) {
                return Err(Error::InvalidParam(format!("p and rho must stay positive; violated near x = {x}")));
            }
            if q(x) < 0.0 {
                return Err(Error::InvalidParam(format!("q must be nonnegative; violated near x = {x}")));
            }
        }
        Ok(Self { p, q, rho, l, alpha1, beta1, alpha2, beta2 })
    }

    /// p = rho = 1, q = 0 on (0, l).
    pub fn constant_coefficients(l: f64, alpha1: f64, beta1: f64, alpha2: f64, beta2: f64) -> Result<Self> {
        Self::new(
            crate::fn1(|_| 1.0),
            crate::fn1(|_| 0.0),
            crate::fn1(|_| 1.0),
            l,
            alpha1,
            beta1,
            alpha2,
            beta2,
        )
    }

    /// RK4 on the first-order system for (u, z = p u'); returns the four
    /// fundamental values v(l), v'(l), w(l), w'(l).
    fn shoot(&self, lambda: f64) -> [f64; 4] {
        // state: [v, z_v, w, z_w] with v(0)=1, v'(0)=0 and w(0)=0, w'(0)=1
        let mut y = [1.0, 0.0, 0.0, (self.p)(0.0)];
        let h = self.l / SL_STEPS as f64;
        let deriv = |x: f64, y: &[f64; 4]| {
            let (p, q, r) = ((self.p)(x), (self.q)(x), (self.rho)(x));
            [y[1] / p, (q - lambda * r) * y[0], y[3] / p, (q - lambda * r) * y[2]]
        };
        for n in 0..SL_STEPS {
            let x = n as f64 * h;
            let k1 = deriv(x, &y);
            let y2 = std::array::from_fn(|i| y[i] + 0.5 * h * k1[i]);
            let k2 = deriv(x + 0.5 * h, &y2);
            let y3 = std::array::from_fn(|i| y[i] + 0.5 * h * k2[i]);
            let k3 = deriv(x + 0.5 * h, &y3);
            let y4 = std::array::from_fn(|i| y[i] + h * k3[i]);
            let k4 = deriv(x + h, &y4);
            for i in 0..4 {
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        let pl = (self.p)(self.l);
        [y[0], y[1] / pl, y[2], y[3] / pl]
    }

    /// Eigenvalues are the zeros of this function of lambda.
    pub fn boundary_determinant(&self, lambda: f64) -> f64 {
        let [v, vp, w, wp] = self.shoot(lambda);
        self.alpha2 * self.beta1 * v
            + self.alpha2 * self.alpha1 * w
            + self.beta2 * self.beta1 * vp
            + self.beta2 * self.alpha1 * wp
    }

    /// Trajectory of u = beta1 v + alpha1 w on the shooting grid.
    fn eigenfunction_values(&self, lambda: f64) -> Vec<f64> {
        let mut u = self.beta1;
        let mut z = (self.p)(0.0) * self.alpha1;
        let h = self.l / SL_STEPS as f64;
        let deriv = |x: f64, u: f64, z: f64| {
            let (p, q, r) = ((self.p)(x), (self.q)(x), (self.rho)(x));
            (z / p, (q - lambda * r) * u)
        };
        let mut values = Vec::with_capacity(SL_STEPS + 1);
        values.push(u);
        for n in 0..SL_STEPS {
            let x = n as f64 * h;
            let (ku1, kz1) = deriv(x, u, z);
            let (ku2, kz2) = deriv(x + 0.5 * h, u + 0.5 * h * ku1, z + 0.5 * h * kz1);
            let (ku3, kz3) = deriv(x + 0.5 * h, u + 0.5 * h * ku2, z + 0.5 * h * kz2);
            let (ku4, kz4) = deriv(x + h, u + h * ku3, z + h * kz3);
            u += h / 6.0 * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4);
            z += h / 6.0 * (kz1 + 2.0 * kz2 + 2.0 * kz3 + kz4);
            values.push(u);
        }
        values
    }
}

#[derive(Debug, Clone)]
pub struct SlEigenpair {
    pub lambda: f64,
    /// rho-normalized eigenfunction on the shooting grid.
    pub u: GridFunction,
}

/// Scan [lambda_lo, lambda_hi] for sign changes of the boundary determinant
/// and bisect each to 1e-10. An empty window yields an empty list.
pub fn sl_shoot(problem: &SlProblem, lambda_lo: f64, lambda_hi: f64) -> Result<Vec<SlEigenpair>> {
    if !(lambda_hi > lambda_lo) {
        return Err(Error::InvalidParam("eigenvalue window must have positive width".into()));
    }
    let d = |lam: f64| problem.boundary_determinant(lam);
    let step = (lambda_hi - lambda_lo) / SL_SCAN as f64;
    let mut lambdas = Vec::new();
    let mut prev = d(lambda_lo);
    for i in 1..=SL_SCAN {
        let lam = lambda_lo + i as f64 * step;
        let cur = d(lam);
        if prev == 0.0 {
            lambdas.push(lam - step);
        } else if prev * cur < 0.0 {
            if let Some(root) = bisect(d, lam - step, lam, 1e-10) {
                lambdas.push(root);
            }
        }
        prev = cur;
    }
    if prev == 0.0 {
        lambdas.push(lambda_hi);
    }
    lambdas.dedup_by(|b, a| (*b - *a).abs() < 1e-8 * (1.0 + b.abs()));

    let grid = UniformGrid1D::new(0.0, problem.l, SL_STEPS)?;
    let h = grid.h();
    let rho: Vec<f64> = grid.nodes().iter().map(|&x| (problem.rho)(x)).collect();
    let mut out = Vec::with_capacity(lambdas.len());
    for lambda in lambdas {
        let mut values = problem.eigenfunction_values(lambda);
        let weighted: Vec<f64> = values.iter().zip(&rho).map(|(u, r)| r * u * u).collect();
        let norm = composite_simpson_nodes(h, &weighted).sqrt();
        if !(norm > 0.0) {
            return Err(Error::Degenerate(format!("zero eigenfunction at lambda = {lambda}")));
        }
        for v in &mut values {
            *v /= norm;
        }
        out.push(SlEigenpair { lambda, u: GridFunction::new(grid.clone(), values)? });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierBasis {
    /// sqrt(2/l) sin(pi k x / l) on (0, l), k >= 1.
    Sine,
    /// 1/sqrt(l) and sqrt(2/l) cos(pi k x / l) on (0, l).
    Cosine,
    /// Constant, cosine, and sine modes on (-l, l).
    Full,
}

#[derive(Debug, Clone)]
pub enum FourierCoeffs {
    /// Entry j holds the coefficient of mode k = j + 1.
    Sine { l: f64, a: Vec<f64> },
    /// Entry j holds the coefficient of mode k = j (j = 0 is the constant).
    Cosine { l: f64, a: Vec<f64> },
    Full { l: f64, a0: f64, cos: Vec<f64>, sin: Vec<f64> },
}

impl FourierCoeffs {
    /// Truncated series evaluated at x.
    pub fn reconstruct(&self, x: f64) -> f64 {
        match self {
            FourierCoeffs::Sine { l, a } => {
                let norm = (2.0 / l).sqrt();
                a.iter()
                    .enumerate()
                    .map(|(j, ak)| ak * norm * (PI * (j + 1) as f64 * x / l).sin())
                    .sum()
            }
            FourierCoeffs::Cosine { l, a } => {
                let norm = (2.0 / l).sqrt();
                a[0] / l.sqrt()
                    + a.iter()
                        .enumerate()
                        .skip(1)
                        .map(|(k, ak)| ak * norm * (PI * k as f64 * x / l).cos())
                        .sum::<f64>()
            }
            FourierCoeffs::Full { l, a0, cos, sin } => {
                let norm = 1.0 / l.sqrt();
                let mut acc = a0 / (2.0 * l).sqrt();
                for (j, (ck, sk)) in cos.iter().zip(sin).enumerate() {
                    let w = PI * (j + 1) as f64 / l;
                    acc += norm * (ck * (w * x).cos() + sk * (w * x).sin());
                }
                acc
            }
        }
    }

    /// Coefficients flattened in mode order (full: constant, cosines, sines).
    pub fn flat(&self) -> Vec<f64> {
        match self {
            FourierCoeffs::Sine { a, .. } | FourierCoeffs::Cosine { a, .. } => a.clone(),
            FourierCoeffs::Full { a0, cos, sin, .. } => {
                let mut v = vec![*a0];
                v.extend_from_slice(cos);
                v.extend_from_slice(sin);
                v
            }
        }
    }
}

// Coefficient integrals run one panel per half-wave of the trig factor so a
// mode whose zeros land on the dyadic refinement nodes still gets resolved.
const COEFF_TOL: f64 = 1e-11;

fn sine_coefficient<F: Fn(f64) -> f64>(f: &F, l: f64, k: usize) -> f64 {
    let w = PI * k as f64 / l;
    let norm = (2.0 / l).sqrt();
    adaptive_simpson_panels(|x| f(x) * norm * (w * x).sin(), 0.0, l, k, COEFF_TOL)
}

/// Orthonormal-basis coefficients of f, each integral to 1e-10.
pub fn fourier_coeffs<F: Fn(f64) -> f64>(
    f: F,
    basis: FourierBasis,
    l: f64,
    k_max: usize,
) -> Result<FourierCoeffs> {
    if !(l > 0.0 && l.is_finite()) || k_max == 0 {
        return Err(Error::InvalidParam("need l > 0 and at least one mode".into()));
    }
    match basis {
        FourierBasis::Sine => {
            let a = (1..=k_max).map(|k| sine_coefficient(&f, l, k)).collect();
            Ok(FourierCoeffs::Sine { l, a })
        }
        FourierBasis::Cosine => {
            let norm = (2.0 / l).sqrt();
            let mut a = vec![adaptive_simpson_panels(|x| f(x) / l.sqrt(), 0.0, l, 1, COEFF_TOL)];
            for k in 1..=k_max {
                let w = PI * k as f64 / l;
                a.push(adaptive_simpson_panels(
                    |x| f(x) * norm * (w * x).cos(),
                    0.0,
                    l,
                    k,
                    COEFF_TOL,
                ));
            }
            Ok(FourierCoeffs::Cosine { l, a })
        }
        FourierBasis::Full => {
            let a0 = adaptive_simpson_panels(|x| f(x) / (2.0 * l).sqrt(), -l, l, 1, COEFF_TOL);
            let norm = 1.0 / l.sqrt();
            let mut cos = Vec::with_capacity(k_max);
            let mut sin = Vec::with_capacity(k_max);
            for k in 1..=k_max {
                let w = PI * k as f64 / l;
                cos.push(adaptive_simpson_panels(
                    |x| f(x) * norm * (w * x).cos(),
                    -l,
                    l,
                    2 * k,
                    COEFF_TOL,
                ));
                sin.push(adaptive_simpson_panels(
                    |x| f(x) * norm * (w * x).sin(),
                    -l,
                    l,
                    2 * k,
                    COEFF_TOL,
                ));
            }
            Ok(FourierCoeffs::Full { l, a0, cos, sin })
        }
    }
}

fn check_series_params(c: f64, l: f64, k_max: usize) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) || !(l > 0.0 && l.is_finite()) || k_max == 0 {
        return Err(Error::InvalidParam("series needs c > 0, l > 0, and modes >= 1".into()));
    }
    Ok(())
}

/// Sine-series solution of u_t = c^2 u_xx on (0, l) with u(x,0) = f and
/// zero endpoint values.
pub fn heat_series<F: Fn(f64) -> f64>(f: F, c: f64, l: f64, k_max: usize) -> Result<Fn2> {
    check_series_params(c, l, k_max)?;
    let a: Vec<f64> = (1..=k_max).map(|k| sine_coefficient(&f, l, k)).collect();
    let norm = (2.0 / l).sqrt();
    Ok(crate::fn2(move |x, t| {
        let mut acc = 0.0;
        for (j, ak) in a.iter().enumerate() {
            let w = PI * (j + 1) as f64 / l;
            acc += ak * (-(w * c) * (w * c) * t).exp() * norm * (w * x).sin();
        }
        acc
    }))
}

/// Sine-series solution of u_tt = c^2 u_xx on (0, l), u(x,0) = f,
/// u_t(x,0) = g, fixed ends.
pub fn wave_series<F, G>(f: F, g: G, c: f64, l: f64, k_max: usize) -> Result<Fn2>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    check_series_params(c, l, k_max)?;
    let mut coeffs = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let omega = PI * k as f64 * c / l;
        coeffs.push((sine_coefficient(&f, l, k), sine_coefficient(&g, l, k) / omega, omega));
    }
    let norm = (2.0 / l).sqrt();
    Ok(crate::fn2(move |x, t| {
        let mut acc = 0.0;
        for (j, (ak, bk, omega)) in coeffs.iter().enumerate() {
            let w = PI * (j + 1) as f64 / l;
            acc += (ak * (omega * t).cos() + bk * (omega * t).sin()) * norm * (w * x).sin();
        }
        acc
    }))
}

/// sinh(a)/sinh(b) for b > 0 without overflow; |a| <= b stays in [-1, 1].
fn sinh_ratio(a: f64, b: f64) -> f64 {
    let sign = if a < 0.0 { -1.0 } else { 1.0 };
    let a = a.abs();
    sign * (a - b).exp() * (-2.0 * a).exp_m1() / (-2.0 * b).exp_m1()
}

/// Harmonic function on (0, l) x (0, l_hat) with u(x, 0) = f, u(x, l_hat) = g
/// and zero side values; hyperbolic-sine ratios evaluated in log space.
pub fn laplace_rectangle_series<F, G>(f: F, g: G, l: f64, l_hat: f64, k_max: usize) -> Result<Fn2>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    check_series_params(1.0, l, k_max)?;
    if !(l_hat > 0.0 && l_hat.is_finite()) {
        return Err(Error::InvalidParam(format!("rectangle height must be positive, got {l_hat}")));
    }
    let coeffs: Vec<(f64, f64)> = (1..=k_max)
        .map(|k| (sine_coefficient(&f, l, k), sine_coefficient(&g, l, k)))
        .collect();
    let norm = (2.0 / l).sqrt();
    Ok(crate::fn2(move |x, y| {
        let mut acc = 0.0;
        for (j, (fk, gk)) in coeffs.iter().enumerate() {
            let w = PI * (j + 1) as f64 / l;
            let vertical = gk * sinh_ratio(w * y, w * l_hat) + fk * sinh_ratio(w * (l_hat - y), w * l_hat);
            acc += vertical * norm * (w * x).sin();
        }
        acc
    }))
}

fn check_kernel_params(t: f64, c: f64) -> Result<()> {
    if !(t > 0.0) {
        return Err(Error::InvalidParam(format!("kernel requires t > 0, got {t}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParam(format!("diffusivity must be positive, got {c}")));
    }
    Ok(())
}

fn kernel_raw(x: f64, t: f64, c: f64) -> f64 {
    (-(x * x) / (4.0 * c * c * t)).exp() / (4.0 * PI * c * c * t).sqrt()
}

/// Fundamental solution of u_t = c^2 u_xx; unit mass for every t > 0.
pub fn heat_kernel(x: f64, t: f64, c: f64) -> Result<f64> {
    check_kernel_params(t, c)?;
    Ok(kernel_raw(x, t, c))
}

/// Whole-line solution u(x,t) = int G(x - s, t) f(s) ds, integrated over the
/// effective kernel width |x - s| <= 8 c sqrt(t) intersected with supp f.
pub fn cauchy_heat<F: Fn(f64) -> f64>(
    f: F,
    support: (f64, f64),
    c: f64,
    x: f64,
    t: f64,
) -> Result<f64> {
    check_kernel_params(t, c)?;
    if !(support.0 < support.1) {
        return Err(Error::InvalidParam("support interval must have positive width".into()));
    }
    let width = 8.0 * c * t.sqrt();
    let lo = (x - width).max(support.0);
    let hi = (x + width).min(support.1);
    if lo >= hi {
        return Ok(0.0);
    }
    Ok(adaptive_simpson(|s| kernel_raw(x - s, t, c) * f(s), lo, hi, 1e-10))
}

/// Dirichlet half-line solution: odd-image kernel against f plus the
/// boundary flux term driven by u(0, t) = g(t).
pub fn halfline_heat<F, G>(f: F, g: G, c: f64, x: f64, t: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    check_kernel_params(t, c)?;
    if x < 0.0 {
        return Err(Error::InvalidParam(format!("half-line solution needs x >= 0, got {x}")));
    }
    // 10 c sqrt(t) rather than the whole-line 8: unbounded data (constant f)
    // leaves an erfc(width / 2 c sqrt(t)) / 2 tail that must sit below 1e-8
    let width = 10.0 * c * t.sqrt();
    let lo = (x - width).max(0.0);
    let hi = x + width;
    let interior = adaptive_simpson(
        |s| (kernel_raw(x - s, t, c) - kernel_raw(x + s, t, c)) * f(s),
        lo,
        hi,
        1e-10,
    );
    // boundary term: the integrable endpoint singularity is removed by the
    // substitution tau = t - sigma^2; tolerance 1e-7 for this piece
    let boundary = if x == 0.0 {
        0.0
    } else {
        adaptive_simpson(
            |sigma| {
                if sigma <= 0.0 {
                    return 0.0;
                }
                let gauss = (-(x * x) / (4.0 * c * c * sigma * sigma)).exp();
                x / (c * PI.sqrt() * sigma * sigma) * gauss * g(t - sigma * sigma)
            },
            0.0,
            t.sqrt(),
            1e-7,
        )
    };
    Ok(interior + boundary)
}

/// u0 erf(x / (2 c sqrt(t))): the half-line solution for constant data.
pub fn erf_solution(u0: f64, c: f64, x: f64, t: f64) -> Result<f64> {
    check_kernel_params(t, c)?;
    Ok(u0 * erf(x / (2.0 * c * t.sqrt())))
}

/// Dirichlet strip solution by the method of images, |j| <= j_max.
pub fn image_series_heat<F: Fn(f64) -> f64>(
    f: F,
    c: f64,
    l: f64,
    j_max: usize,
    x: f64,
    t: f64,
) -> Result<f64> {
    check_kernel_params(t, c)?;
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::InvalidParam(format!("strip width must be positive, got {l}")));
    }
    let mut acc = 0.0;
    for j in -(j_max as i64)..=(j_max as i64) {
        let shift = 2.0 * j as f64 * l;
        // Both kernels in the term are sharp spikes at small t; cut the range
        // at their peaks s = x - shift and s = shift - x so each piece is
        // one-sided and the refinement locks onto it.
        let mut cuts = vec![0.0, l];
        for peak in [x - shift, shift - x] {
            if peak > 0.0 && peak < l {
                cuts.push(peak);
            }
        }
        cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
        for pair in cuts.windows(2) {
            acc += adaptive_simpson(
                |s| (kernel_raw(x - s - shift, t, c) - kernel_raw(x + s - shift, t, c)) * f(s),
                pair[0],
                pair[1],
                1e-12,
            );
        }
    }
    Ok(acc)
}

fn check_halfplane(y: f64) -> Result<()> {
    if !(y > 0.0) {
        return Err(Error::InvalidParam(format!("half-plane formulas need y > 0, got {y}")));
    }
    Ok(())
}

/// Harmonic extension of boundary data f by the Poisson kernel, evaluated
/// through the angle substitution x' = x + y tan(theta); f must be bounded.
pub fn laplace_halfplane<F: Fn(f64) -> f64>(f: F, x: f64, y: f64) -> Result<f64> {
    check_halfplane(y)?;
    Ok(adaptive_simpson(|theta| f(x + y * theta.tan()), -0.5 * PI, 0.5 * PI, 1e-10) / PI)
}

/// Closed-form harmonic extension of the unit step: 1/2 + arctan(x/y)/pi.
pub fn halfplane_heaviside(x: f64, y: f64) -> Result<f64> {
    check_halfplane(y)?;
    Ok(0.5 + (x / y).atan() / PI)
}

/// Logarithmic potential with normal-derivative data g supported on the
/// given interval.
pub fn neumann_halfplane<G: Fn(f64) -> f64>(
    g: G,
    support: (f64, f64),
    x: f64,
    y: f64,
) -> Result<f64> {
    check_halfplane(y)?;
    if !(support.0 < support.1) {
        return Err(Error::InvalidParam("support interval must have positive width".into()));
    }
    Ok(adaptive_simpson(
        |s| ((x - s) * (x - s) + y * y).ln() * g(s),
        support.0,
        support.1,
        1e-10,
    ) / (2.0 * PI))
}

fn check_decay_rate(k: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParam(format!("decay rate must be positive, got {k}")));
    }
    Ok(())
}

/// Green function of -y'' + k^2 y on the line.
pub fn green_decay(k: f64, r: f64) -> f64 {
    (-k * r.abs()).exp() / (2.0 * k)
}

/// Outgoing Green function of y'' + k^2 y: (i/2k) e^{ik|r|}.
pub fn green_radiating(k: f64, r: f64) -> Complex64 {
    Complex64::new(0.0, 1.0 / (2.0 * k)) * Complex64::new(0.0, k * r.abs()).exp()
}

/// Bounded solution of -y'' + k^2 y = f for f supported on the interval;
/// the quadrature splits at the kernel kink.
pub fn ode_green_solve<F: Fn(f64) -> f64>(f: F, support: (f64, f64), k: f64, x: f64) -> Result<f64> {
    check_decay_rate(k)?;
    if !(support.0 < support.1) {
        return Err(Error::InvalidParam("support interval must have positive width".into()));
    }
    let kernel = |s: f64| green_decay(k, x - s) * f(s);
    let (lo, hi) = support;
    let v = if x > lo && x < hi {
        adaptive_simpson(kernel, lo, x, 1e-10) + adaptive_simpson(kernel, x, hi, 1e-10)
    } else {
        adaptive_simpson(kernel, lo, hi, 1e-10)
    };
    Ok(v)
}

/// Constant forcing c gives the constant solution c / k^2.
pub fn ode_green_uniform(c: f64, k: f64) -> Result<f64> {
    check_decay_rate(k)?;
    Ok(c / (k * k))
}

/// Signal propagation into x > 0 from the boundary record u(0, t) = f(t):
/// u = f(t - x/c) once the front has arrived, zero before.
pub fn halfline_wave<F: Fn(f64) -> f64>(f: F, c: f64, x: f64, t: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParam(format!("wave speed must be positive, got {c}")));
    }
    if x < 0.0 {
        return Err(Error::InvalidParam(format!("signal region is x >= 0, got {x}")));
    }
    let arg = t - x / c;
    Ok(if arg < 0.0 { 0.0 } else { f(arg) })
}

/// Legendre polynomial by the three-term recurrence.
pub fn legendre(k: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = x;
    for n in 1..k {
        let next = ((2 * n + 1) as f64 * x * cur - n as f64 * prev) / (n + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// Squared L2 norm of P_k on (-1, 1).
pub fn legendre_norm2(k: usize) -> f64 {
    2.0 / (2 * k + 1) as f64
}

/// Root of tau^3 + tau = r; the left side is strictly increasing so the
/// root is unique. Newton with a bisection fallback.
pub fn cubic_invariant_tau(r: f64) -> f64 {
    let p = |tau: f64| tau * tau * tau + tau - r;
    let mut tau = if r.abs() < 2.0 { 0.5 * r } else { r.cbrt() };
    for _ in 0..100 {
        let val = p(tau);
        if val.abs() <= 1e-13 * (1.0 + r.abs()) {
            return tau;
        }
        tau -= val / (3.0 * tau * tau + 1.0);
    }
    let b = 1.0 + 1.5 * r.abs().cbrt();
    bisect(p, -b, b, 1e-14).unwrap_or(tau)
}

/// Exact solution of (3x^2 + 1) u_t + 2t u_x = 0 with u(x, 0) = phi(x):
/// u = phi(tau) where tau^3 + tau = x^3 + x - t^2 labels the characteristic.
pub fn cubic_transport_exact<F: Fn(f64) -> f64>(phi: F, x: f64, t: f64) -> f64 {
    phi(cubic_invariant_tau(x * x * x + x - t * t))
}
