//! Stability analysis at two levels: amplification factors of difference
//! schemes under a single Fourier mode, and normal-mode growth rates
//! lambda(k) of constant-coefficient second-order PDEs, with the stability
//! index Omega and the conservative/dissipative/dispersive taxonomy.

use num_complex::Complex64;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Amplification polynomial of a two-level or three-level scheme at angle
/// theta, as ascending coefficients [c0, c1] or [c0, c1, c2] in xi.
#[derive(Clone)]
pub struct SchemeSymbol {
    pub name: String,
    coeffs: Arc<dyn Fn(f64, f64) -> Vec<Complex64> + Send + Sync>,
}

impl SchemeSymbol {
    pub fn new(
        name: impl Into<String>,
        coeffs: impl Fn(f64, f64) -> Vec<Complex64> + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), coeffs: Arc::new(coeffs) }
    }

    /// xi = 1 - 4 s sin^2(theta/2); param is the mesh ratio s.
    pub fn heat_explicit() -> Self {
        Self::new("heat-explicit", |theta, s| {
            let sin2 = (theta / 2.0).sin().powi(2);
            vec![Complex64::new(-(1.0 - 4.0 * s * sin2), 0.0), Complex64::new(1.0, 0.0)]
        })
    }

    /// xi = (1 - 2(1-Q)s(1-cos)) / (1 + 2Qs(1-cos)); param is s, Q baked in.
    pub fn heat_qscheme(q: f64) -> Self {
        Self::new(format!("heat-qscheme(Q={q})"), move |theta, s| {
            let w = 1.0 - theta.cos();
            vec![
                Complex64::new(-(1.0 - 2.0 * (1.0 - q) * s * w), 0.0),
                Complex64::new(1.0 + 2.0 * q * s * w, 0.0),
            ]
        })
    }

    /// xi^2 - 2(1+p) xi + 1 with p = s(cos theta - 1); param is s = c^2k^2/h^2.
    pub fn wave_leapfrog() -> Self {
        Self::new("wave-leapfrog", |theta, s| {
            let p = s * (theta.cos() - 1.0);
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(-2.0 * (1.0 + p), 0.0),
                Complex64::new(1.0, 0.0),
            ]
        })
    }

    /// xi^2 + 2 i nu sin(theta) xi - 1; param is the Courant number nu = bk/(ah).
    pub fn advection_leapfrog() -> Self {
        Self::new("advection-leapfrog", |theta, nu| {
            vec![
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.0, 2.0 * nu * theta.sin()),
                Complex64::new(1.0, 0.0),
            ]
        })
    }

    pub fn polynomial(&self, theta: f64, param: f64) -> Vec<Complex64> {
        (self.coeffs)(theta, param)
    }
}

/// Roots xi of the amplification polynomial at one angle.
pub fn amplification_factors(symbol: &SchemeSymbol, theta: f64, param: f64) -> Result<Vec<Complex64>> {
    let c = symbol.polynomial(theta, param);
    poly_roots(&c, theta)
}

fn poly_roots(c: &[Complex64], theta: f64) -> Result<Vec<Complex64>> {
    match c.len() {
        2 => {
            if c[1].norm() == 0.0 {
                return Err(Error::Degenerate(format!("leading coefficient vanishes at theta = {theta}")));
            }
            Ok(vec![-c[0] / c[1]])
        }
        3 => {
            if c[2].norm() == 0.0 {
                return Err(Error::Degenerate(format!("leading coefficient vanishes at theta = {theta}")));
            }
            Ok(quadratic_roots(c[2], c[1], c[0]).to_vec())
        }
        n => Err(Error::InvalidParam(format!("amplification polynomial of degree {} not supported", n.saturating_sub(1)))),
    }
}

/// Roots of a x^2 + b x + c, sign of the square root chosen against
/// cancellation in b.
pub fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * a * c;
    let sq = disc.sqrt();
    // pick the branch that adds magnitudes
    let q = if (b + sq).norm() >= (b - sq).norm() { -0.5 * (b + sq) } else { -0.5 * (b - sq) };
    if q.norm() == 0.0 {
        [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]
    } else {
        [q / a, c / q]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    StrictlyStable,
    NeutrallyStable,
    Unstable,
    IllPosed,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::StrictlyStable => "strictly stable",
            Classification::NeutrallyStable => "neutrally stable",
            Classification::Unstable => "unstable",
            Classification::IllPosed => "ill-posed",
        };
        f.write_str(s)
    }
}

/// Verdict for a difference scheme: sampled max |xi| against 1 + 1e-12.
#[derive(Debug, Clone)]
pub struct SchemeVerdict {
    pub stable: bool,
    pub max_modulus: f64,
    pub worst_theta: f64,
    pub classification: Classification,
    /// A double root sat on the unit circle somewhere on the grid.
    pub algebraic_growth: bool,
}

/// Max |xi| over the uniform angle grid {2 pi m / n_theta}.
pub fn scheme_stability(symbol: &SchemeSymbol, param: f64, n_theta: usize) -> Result<SchemeVerdict> {
    if n_theta < 64 {
        return Err(Error::InvalidParam(format!("need at least 64 angles, got {n_theta}")));
    }
    let mut max_modulus = 0.0f64;
    let mut worst_theta = 0.0;
    let mut algebraic_growth = false;
    for m in 0..n_theta {
        let theta = 2.0 * std::f64::consts::PI * m as f64 / n_theta as f64;
        let c = symbol.polynomial(theta, param);
        let roots = poly_roots(&c, theta)?;
        if c.len() == 3 {
            let disc = c[1] * c[1] - 4.0 * c[2] * c[0];
            let scale = c[1].norm_sqr() + 4.0 * (c[2] * c[0]).norm() + 1.0;
            if disc.norm() <= 1e-12 * scale && roots[0].norm() > 1.0 - 1e-9 {
                algebraic_growth = true;
            }
        }
        for r in roots {
            let m_r = r.norm();
            if m_r > max_modulus {
                max_modulus = m_r;
                worst_theta = theta;
            }
        }
    }
    let stable = max_modulus <= 1.0 + 1e-12;
    let classification = if !stable {
        Classification::Unstable
    } else if max_modulus < 1.0 - 1e-12 {
        Classification::StrictlyStable
    } else {
        Classification::NeutrallyStable
    };
    Ok(SchemeVerdict { stable, max_modulus, worst_theta, classification, algebraic_growth })
}

/// Constant coefficients of A u_xx + 2B u_xt + C u_tt + D u_x + E u_t + F u = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl PdeCoefficients {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        Self { a, b, c, d, e, f }
    }

    /// u_t = c^2 u_xx, written as -c^2 u_xx + u_t = 0.
    pub fn heat(c2: f64) -> Self {
        Self::new(-c2, 0.0, 0.0, 0.0, 1.0, 0.0)
    }

    /// u_tt = gamma^2 u_xx - c^2 u: Klein-Gordon (c = 0 gives the wave equation).
    pub fn klein_gordon(gamma: f64, c: f64) -> Self {
        Self::new(-gamma * gamma, 0.0, 1.0, 0.0, 0.0, c * c)
    }

    /// u_tt + 2 lambda u_t = gamma^2 u_xx: telegrapher with damping lambda.
    pub fn telegrapher(gamma: f64, lambda: f64) -> Self {
        Self::new(-gamma * gamma, 0.0, 1.0, 0.0, 2.0 * lambda, 0.0)
    }
}

/// Roots lambda of C lambda^2 + (2ikB + E) lambda + (-A k^2 + iDk + F) = 0
/// for the mode u = e^(lambda t) e^(ikx).
pub fn normal_mode_lambda(coeffs: &PdeCoefficients, k: f64) -> Result<Vec<Complex64>> {
    let b1 = Complex64::new(coeffs.e, 2.0 * k * coeffs.b);
    let b0 = Complex64::new(-coeffs.a * k * k + coeffs.f, coeffs.d * k);
    if coeffs.c != 0.0 {
        Ok(quadratic_roots(Complex64::new(coeffs.c, 0.0), b1, b0).to_vec())
    } else if coeffs.e != 0.0 {
        Ok(vec![-b0 / b1])
    } else {
        Err(Error::Degenerate("C = E = 0 leaves no time evolution to analyze".into()))
    }
}

/// Verdict for a PDE: Omega = sup_k Re lambda over a symmetric log grid,
/// +infinity when the tail keeps growing.
#[derive(Debug, Clone)]
pub struct PdeVerdict {
    pub stable: bool,
    pub omega: f64,
    pub worst_k: f64,
    pub classification: Classification,
    /// Double lambda-roots at every sampled k: algebraic growth possible.
    pub algebraic_growth: bool,
}

fn k_samples(k_max: f64, n_k: usize) -> Vec<f64> {
    let n_pos = n_k / 2;
    let (lg_lo, lg_hi) = (-3.0, k_max.log10());
    let mut ks = vec![0.0];
    for i in 0..n_pos {
        let lg = lg_lo + (lg_hi - lg_lo) * i as f64 / (n_pos - 1) as f64;
        let k = 10f64.powf(lg);
        ks.push(k);
        ks.push(-k);
    }
    ks
}

fn max_re_lambda(coeffs: &PdeCoefficients, k: f64) -> Result<f64> {
    let roots = normal_mode_lambda(coeffs, k)?;
    Ok(roots.iter().fold(f64::NEG_INFINITY, |m, r| m.max(r.re)))
}

/// Stability index Omega with ill-posedness detection on the sampled tail.
pub fn stability_index(coeffs: &PdeCoefficients, k_max: f64, n_k: usize) -> Result<PdeVerdict> {
    if n_k < 256 {
        return Err(Error::InvalidParam(format!("need at least 256 wavenumbers, got {n_k}")));
    }
    if !(k_max > 1e-2) {
        return Err(Error::InvalidParam(format!("k_max must exceed 1e-2, got {k_max}")));
    }
    let ks = k_samples(k_max, n_k);
    let mut omega = f64::NEG_INFINITY;
    let mut worst_k = 0.0;
    let mut algebraic_growth = coeffs.c != 0.0;
    for &k in &ks {
        let g = max_re_lambda(coeffs, k)?;
        if g > omega {
            omega = g;
            worst_k = k;
        }
        if coeffs.c != 0.0 {
            let b1 = Complex64::new(coeffs.e, 2.0 * k * coeffs.b);
            let b0 = Complex64::new(-coeffs.a * k * k + coeffs.f, coeffs.d * k);
            let disc = b1 * b1 - 4.0 * coeffs.c * b0;
            let scale = b1.norm_sqr() + 4.0 * (coeffs.c * b0).norm() + 1.0;
            if disc.norm() > 1e-12 * scale {
                algebraic_growth = false;
            }
        }
    }

    // Ill-posed when Re lambda keeps climbing through the last decade and
    // ends positive: the sup is +infinity, not a number we sampled.
    let mut tail: Vec<(f64, f64)> = Vec::new();
    for &k in &ks {
        if k >= k_max / 10.0 {
            tail.push((k, max_re_lambda(coeffs, k)?));
        }
    }
    tail.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let ill_posed = tail.len() >= 4 && {
        let first = tail.first().unwrap().1;
        let last = tail.last().unwrap().1;
        let monotone = tail.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-12 * (1.0 + w[0].1.abs()));
        monotone && last > 0.0 && last > first + 1e-8 * (1.0 + first.abs())
    };

    if ill_posed {
        return Ok(PdeVerdict {
            stable: false,
            omega: f64::INFINITY,
            worst_k: f64::INFINITY,
            classification: Classification::IllPosed,
            algebraic_growth: false,
        });
    }
    let classification = if omega > 1e-12 {
        Classification::Unstable
    } else if omega < -1e-12 {
        Classification::StrictlyStable
    } else {
        Classification::NeutrallyStable
    };
    Ok(PdeVerdict {
        stable: omega <= 1e-12,
        omega,
        worst_k,
        classification,
        algebraic_growth: algebraic_growth && classification == Classification::NeutrallyStable,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeType {
    /// Re lambda = 0 for every mode: amplitudes are constant.
    Conservative,
    /// Omega <= 0 with Re lambda < 0 except at finitely many k.
    Dissipative,
    Neither,
}

/// Conservative / dissipative taxonomy over the sampled wavenumbers.
/// Isolated samples with |Re lambda| < 1e-10 count as the permitted
/// finite exceptions of the dissipative definition.
pub fn classify_mode_type(coeffs: &PdeCoefficients, k_max: f64, n_k: usize) -> Result<ModeType> {
    if n_k < 256 {
        return Err(Error::InvalidParam(format!("need at least 256 wavenumbers, got {n_k}")));
    }
    let ks = k_samples(k_max, n_k);
    let mut max_abs_re = 0.0f64;
    let mut omega = f64::NEG_INFINITY;
    let mut exceptions = 0usize;
    for &k in &ks {
        let roots = normal_mode_lambda(coeffs, k)?;
        let mut strictly_negative = true;
        for r in &roots {
            max_abs_re = max_abs_re.max(r.re.abs());
            if r.re >= -1e-10 {
                strictly_negative = false;
            }
        }
        omega = omega.max(roots.iter().fold(f64::NEG_INFINITY, |m, r| m.max(r.re)));
        if !strictly_negative {
            exceptions += 1;
        }
    }
    if max_abs_re < 1e-12 {
        return Ok(ModeType::Conservative);
    }
    if omega <= 1e-12 && exceptions <= 5 {
        return Ok(ModeType::Dissipative);
    }
    Ok(ModeType::Neither)
}

/// omega(k) on the positive branch of a conservative equation, with phase
/// and group velocities and the dispersive flag.
#[derive(Clone)]
pub struct DispersionRelation {
    pub coeffs: PdeCoefficients,
    pub k_lo: f64,
    pub k_hi: f64,
    pub dispersive: bool,
}

/// Build the dispersion relation of a conservative equation on [k_lo, k_hi].
pub fn dispersion(coeffs: &PdeCoefficients, k_lo: f64, k_hi: f64) -> Result<DispersionRelation> {
    if !(k_hi > k_lo) {
        return Err(Error::InvalidParam(format!("need k_lo < k_hi, got [{k_lo}, {k_hi}]")));
    }
    let kind = classify_mode_type(coeffs, k_hi.abs().max(1.0), 512)?;
    if kind != ModeType::Conservative {
        return Err(Error::InvalidParam(
            "dispersion relation is defined for conservative equations only".into(),
        ));
    }
    let mut rel = DispersionRelation { coeffs: *coeffs, k_lo, k_hi, dispersive: false };
    let n = 64;
    for i in 0..=n {
        let k = k_lo + (k_hi - k_lo) * i as f64 / n as f64;
        if rel.omega_second(k)?.abs() > 1e-8 {
            rel.dispersive = true;
            break;
        }
    }
    Ok(rel)
}

impl DispersionRelation {
    /// Positive frequency branch |Im lambda_+|.
    pub fn omega(&self, k: f64) -> Result<f64> {
        let roots = normal_mode_lambda(&self.coeffs, k)?;
        Ok(roots.iter().fold(0.0f64, |m, r| m.max(r.im)).abs())
    }

    /// v_f = omega / k.
    pub fn phase_speed(&self, k: f64) -> Result<f64> {
        if k == 0.0 {
            return Err(Error::InvalidParam("phase speed is undefined at k = 0".into()));
        }
        Ok(self.omega(k)? / k)
    }

    /// v_g = d omega / dk: analytic -Ak/(C omega) in the Klein-Gordon shape
    /// (B = D = E = 0, C != 0), centered difference otherwise.
    pub fn group_velocity(&self, k: f64) -> Result<f64> {
        let c = &self.coeffs;
        if c.b == 0.0 && c.d == 0.0 && c.e == 0.0 && c.c != 0.0 {
            let w = self.omega(k)?;
            if w == 0.0 {
                return Err(Error::Degenerate("omega = 0, group velocity undefined".into()));
            }
            return Ok(-c.a * k / (c.c * w));
        }
        self.group_velocity_fd(k)
    }

    /// Centered-difference group velocity, step 1e-6 (1 + |k|).
    pub fn group_velocity_fd(&self, k: f64) -> Result<f64> {
        let dk = 1e-6 * (1.0 + k.abs());
        Ok((self.omega(k + dk)? - self.omega(k - dk)?) / (2.0 * dk))
    }

    /// Centered second difference of omega.
    pub fn omega_second(&self, k: f64) -> Result<f64> {
        let dk = 1e-3 * (1.0 + k.abs());
        Ok((self.omega(k + dk)? - 2.0 * self.omega(k)? + self.omega(k - dk)?) / (dk * dk))
    }
}
