//! Type classification of linear second-order PDEs in two and n variables,
//! with the constant-coefficient canonical-form coordinate changes and a
//! chain-rule verifier that checks each transform numerically.

use num_complex::Complex64;

use crate::dense::sym_eigen;
use crate::error::{Error, Result};
use crate::Fn2;

/// A u_xx + 2B u_xy + C u_yy + D u_x + E u_y + F u = G, coefficients as
/// functions of (x, y); constant problems remember their values so the
/// canonical-form constructions can use them.
#[derive(Clone)]
pub struct SecondOrderPde2 {
    pub a: Fn2,
    pub b: Fn2,
    pub c: Fn2,
    pub d: Fn2,
    pub e: Fn2,
    pub f: Fn2,
    pub g: Fn2,
    constants: Option<[f64; 7]>,
}

impl SecondOrderPde2 {
    pub fn constant(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64, g: f64) -> Self {
        Self {
            a: crate::fn2(move |_, _| a),
            b: crate::fn2(move |_, _| b),
            c: crate::fn2(move |_, _| c),
            d: crate::fn2(move |_, _| d),
            e: crate::fn2(move |_, _| e),
            f: crate::fn2(move |_, _| f),
            g: crate::fn2(move |_, _| g),
            constants: Some([a, b, c, d, e, f, g]),
        }
    }

    /// Principal part only, constant coefficients.
    pub fn principal(a: f64, b: f64, c: f64) -> Self {
        Self::constant(a, b, c, 0.0, 0.0, 0.0, 0.0)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn variable(a: Fn2, b: Fn2, c: Fn2, d: Fn2, e: Fn2, f: Fn2, g: Fn2) -> Self {
        Self { a, b, c, d, e, f, g, constants: None }
    }

    pub fn constants(&self) -> Option<[f64; 7]> {
        self.constants
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Hyperbolic => "hyperbolic",
            Kind::Parabolic => "parabolic",
            Kind::Elliptic => "elliptic",
        })
    }
}

/// Result of classifying by the sign of B^2 - AC over the sample points.
#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub kind: Kind,
    pub discriminants: Vec<f64>,
    /// omega_plus, omega_minus from A z^2 + 2B z + C; None where A = 0.
    pub roots: Option<[Complex64; 2]>,
    /// All sample points agreed (true) or a single point was classified.
    pub uniform: bool,
}

fn kind_of(a: f64, b: f64, c: f64) -> Kind {
    let disc = b * b - a * c;
    let scale = (b * b + (a * c).abs()).max(1e-300);
    if disc > 1e-12 * scale {
        Kind::Hyperbolic
    } else if disc < -1e-12 * scale {
        Kind::Elliptic
    } else {
        Kind::Parabolic
    }
}

/// Roots of A z^2 + 2B z + C = 0 as omega_plus, omega_minus.
fn omega_roots(a: f64, b: f64, c: f64) -> [Complex64; 2] {
    let disc = Complex64::new(b * b - a * c, 0.0).sqrt();
    [(-b + disc) / a, (-b - disc) / a]
}

/// Classify at each sample point; mixed-type regions are an error naming
/// the first offenders of each kind.
pub fn classify2(pde: &SecondOrderPde2, points: &[(f64, f64)]) -> Result<ClassificationResult> {
    if points.is_empty() {
        return Err(Error::InvalidParam("classification needs at least one sample point".into()));
    }
    let mut kinds = Vec::with_capacity(points.len());
    let mut discs = Vec::with_capacity(points.len());
    for &(x, y) in points {
        let (a, b, c) = ((pde.a)(x, y), (pde.b)(x, y), (pde.c)(x, y));
        discs.push(b * b - a * c);
        kinds.push(kind_of(a, b, c));
    }
    let first = kinds[0];
    if let Some(pos) = kinds.iter().position(|&k| k != first) {
        return Err(Error::MixedType(format!(
            "{} at {:?} but {} at {:?}",
            first, points[0], kinds[pos], points[pos]
        )));
    }
    let (x0, y0) = points[0];
    let a0 = (pde.a)(x0, y0);
    let roots = if a0 != 0.0 {
        Some(omega_roots(a0, (pde.b)(x0, y0), (pde.c)(x0, y0)))
    } else {
        None
    };
    Ok(ClassificationResult { kind: first, discriminants: discs, roots, uniform: points.len() > 1 })
}

/// Linear coordinate form alpha x + beta y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearForm {
    pub x_coeff: f64,
    pub y_coeff: f64,
}

impl LinearForm {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.x_coeff * x + self.y_coeff * y
    }
}

/// Characteristic families of a constant-coefficient operator.
#[derive(Debug, Clone)]
pub enum CharFamilies {
    /// Two real families xi = const, eta = const.
    Hyperbolic { xi: LinearForm, eta: LinearForm },
    /// One real family xi = const; eta is a deterministic transverse choice.
    Parabolic { xi: LinearForm, eta: LinearForm },
    /// No real characteristics.
    Elliptic,
}

fn require_constants(pde: &SecondOrderPde2) -> Result<[f64; 7]> {
    pde.constants()
        .ok_or_else(|| Error::InvalidParam("this construction needs constant coefficients".into()))
}

/// Level-set families xi = y + omega_plus x, eta = y + omega_minus x
/// (hyperbolic), or the single parabolic family plus a transverse line.
pub fn characteristic_families_constant(pde: &SecondOrderPde2) -> Result<CharFamilies> {
    let [a, b, c, ..] = require_constants(pde)?;
    let kind = kind_of(a, b, c);
    match kind {
        Kind::Elliptic => Ok(CharFamilies::Elliptic),
        Kind::Hyperbolic => {
            if a != 0.0 {
                let r = omega_roots(a, b, c);
                Ok(CharFamilies::Hyperbolic {
                    xi: LinearForm { x_coeff: r[0].re, y_coeff: 1.0 },
                    eta: LinearForm { x_coeff: r[1].re, y_coeff: 1.0 },
                })
            } else {
                // A = 0, B != 0: one family from 2Bz + C = 0, one from dx = 0
                Ok(CharFamilies::Hyperbolic {
                    xi: LinearForm { x_coeff: -c / (2.0 * b), y_coeff: 1.0 },
                    eta: LinearForm { x_coeff: 1.0, y_coeff: 0.0 },
                })
            }
        }
        Kind::Parabolic => {
            if a != 0.0 {
                let omega = -b / a;
                Ok(CharFamilies::Parabolic {
                    xi: LinearForm { x_coeff: omega, y_coeff: 1.0 },
                    // any eta with c != omega^2 works; omega^2 + 1 is deterministic
                    eta: LinearForm { x_coeff: omega * omega + 1.0, y_coeff: omega },
                })
            } else {
                // A = B = 0, C != 0: the family is x = const
                Ok(CharFamilies::Parabolic {
                    xi: LinearForm { x_coeff: 1.0, y_coeff: 0.0 },
                    eta: LinearForm { x_coeff: 0.0, y_coeff: 1.0 },
                })
            }
        }
    }
}

/// Canonical principal-part pattern after the coordinate change.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrincipalPart {
    /// u_xi_eta only (first hyperbolic canonical form).
    MixedOnly,
    /// u_eta_eta only (parabolic).
    SecondOnly,
    /// u_alpha_alpha + u_beta_beta with equal coefficients (elliptic).
    LaplaceLike,
}

/// Affine change of coordinates with the transformed principal coefficients.
#[derive(Debug, Clone)]
pub struct CanonicalTransform {
    pub kind: Kind,
    pub xi: LinearForm,
    pub eta: LinearForm,
    /// Transformed (A_hat, B_hat, C_hat).
    pub transformed: (f64, f64, f64),
    pub principal: PrincipalPart,
}

/// Transformed principal coefficients under xi = p x + q y, eta = r x + s y.
fn push_forward(a: f64, b: f64, c: f64, xi: LinearForm, eta: LinearForm) -> (f64, f64, f64) {
    let (p, q) = (xi.x_coeff, xi.y_coeff);
    let (r, s) = (eta.x_coeff, eta.y_coeff);
    let a_hat = a * p * p + 2.0 * b * p * q + c * q * q;
    let b_hat = a * p * r + b * (p * s + q * r) + c * q * s;
    let c_hat = a * r * r + 2.0 * b * r * s + c * s * s;
    (a_hat, b_hat, c_hat)
}

/// Apply the original principal operator to w(x, y) = u(xi, eta) for the
/// quadratic u picked out by (i, j) in {xi^2, xi eta, eta^2}, using exact
/// second differences. Recovers the transformed coefficients without any
/// symbolic work.
fn chain_rule_probe(a: f64, b: f64, c: f64, xi: LinearForm, eta: LinearForm) -> (f64, f64, f64) {
    let w = |u: &dyn Fn(f64, f64) -> f64, x: f64, y: f64| u(xi.eval(x, y), eta.eval(x, y));
    let second = |u: &dyn Fn(f64, f64) -> f64| {
        // second differences are exact on quadratics; h = 1/2 keeps it tame
        let h = 0.5;
        let (x0, y0) = (0.3, -0.7);
        let wxx = (w(u, x0 + h, y0) - 2.0 * w(u, x0, y0) + w(u, x0 - h, y0)) / (h * h);
        let wyy = (w(u, x0, y0 + h) - 2.0 * w(u, x0, y0) + w(u, x0, y0 - h)) / (h * h);
        let wxy = (w(u, x0 + h, y0 + h) - w(u, x0 + h, y0 - h) - w(u, x0 - h, y0 + h)
            + w(u, x0 - h, y0 - h))
            / (4.0 * h * h);
        a * wxx + 2.0 * b * wxy + c * wyy
    };
    let on_xi2 = second(&|xi: f64, _| xi * xi);
    let on_xieta = second(&|xi: f64, eta: f64| xi * eta);
    let on_eta2 = second(&|_, eta: f64| eta * eta);
    (on_xi2 / 2.0, on_xieta / 2.0, on_eta2 / 2.0)
}

/// Canonical-form coordinate change for a constant-coefficient operator,
/// verified by the chain-rule probe to 1e-10 before it is returned.
pub fn canonical_transform_constant(pde: &SecondOrderPde2) -> Result<CanonicalTransform> {
    let [a, b, c, ..] = require_constants(pde)?;
    let kind = kind_of(a, b, c);
    let (xi, eta, principal) = match kind {
        Kind::Hyperbolic | Kind::Parabolic => match characteristic_families_constant(pde)? {
            CharFamilies::Hyperbolic { xi, eta } => (xi, eta, PrincipalPart::MixedOnly),
            CharFamilies::Parabolic { xi, eta } => (xi, eta, PrincipalPart::SecondOnly),
            CharFamilies::Elliptic => unreachable!("kind and families disagree"),
        },
        Kind::Elliptic => {
            if a == 0.0 {
                return Err(Error::Degenerate("elliptic operator with A = 0 cannot occur (AC > B^2)".into()));
            }
            let h0 = (a * c - b * b).sqrt();
            (
                LinearForm { x_coeff: -b / a, y_coeff: 1.0 },
                LinearForm { x_coeff: h0 / a, y_coeff: 0.0 },
                PrincipalPart::LaplaceLike,
            )
        }
    };
    let jac = xi.x_coeff * eta.y_coeff - xi.y_coeff * eta.x_coeff;
    if jac.abs() < 1e-12 * (1.0 + xi.x_coeff.abs() + eta.x_coeff.abs()) {
        return Err(Error::Degenerate(format!("coordinate map has Jacobian {jac}")));
    }

    let transformed = push_forward(a, b, c, xi, eta);
    let probed = chain_rule_probe(a, b, c, xi, eta);
    let scale = transformed.0.abs() + transformed.1.abs() + transformed.2.abs() + 1.0;
    let agree = (transformed.0 - probed.0).abs() <= 1e-10 * scale
        && (transformed.1 - probed.1).abs() <= 1e-10 * scale
        && (transformed.2 - probed.2).abs() <= 1e-10 * scale;
    let pattern_ok = match principal {
        PrincipalPart::MixedOnly => {
            probed.0.abs() <= 1e-10 * scale && probed.2.abs() <= 1e-10 * scale && probed.1.abs() > 1e-10 * scale
        }
        PrincipalPart::SecondOnly => {
            probed.0.abs() <= 1e-10 * scale && probed.1.abs() <= 1e-10 * scale && probed.2.abs() > 1e-10 * scale
        }
        PrincipalPart::LaplaceLike => {
            (probed.0 - probed.2).abs() <= 1e-10 * scale && probed.1.abs() <= 1e-10 * scale
        }
    };
    if !agree || !pattern_ok {
        return Err(Error::Degenerate(format!(
            "canonical pattern check failed: transformed {transformed:?}, probed {probed:?}"
        )));
    }
    Ok(CanonicalTransform { kind, xi, eta, transformed, principal })
}

/// Classification of a_ij d_i d_j u in n variables by eigenvalue signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NdKind {
    Elliptic,
    Hyperbolic,
    Parabolic,
    /// At least two eigenvalues of each sign and none zero; outside the
    /// three-way taxonomy.
    Ultrahyperbolic,
}

impl std::fmt::Display for NdKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NdKind::Elliptic => "elliptic",
            NdKind::Hyperbolic => "hyperbolic",
            NdKind::Parabolic => "parabolic",
            NdKind::Ultrahyperbolic => "ultrahyperbolic",
        })
    }
}

#[derive(Debug, Clone)]
pub struct NdClassification {
    pub kind: NdKind,
    pub eigenvalues: Vec<f64>,
    /// Rows are the orthonormal eigenvectors: the diagonalizing coordinates
    /// xi = V x.
    pub axes: Vec<Vec<f64>>,
    /// Per-coordinate scaling 1/sqrt|lambda_i| giving +-1 coefficients;
    /// None where lambda_i = 0.
    pub scaling: Vec<Option<f64>>,
}

/// Symmetrize, diagonalize by Jacobi rotations, and bucket the eigenvalue
/// signs (threshold 1e-10 of the largest entry).
pub fn classify_ndim(a: &[Vec<f64>]) -> Result<NdClassification> {
    let n = a.len();
    if n < 2 {
        return Err(Error::InvalidParam(format!("need dimension >= 2, got {n}")));
    }
    let (eigenvalues, axes) = sym_eigen(a)?;
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1e-300);
    let tol = 1e-10 * scale;
    let zeros = eigenvalues.iter().filter(|&&l| l.abs() <= tol).count();
    let pos = eigenvalues.iter().filter(|&&l| l > tol).count();
    let neg = eigenvalues.iter().filter(|&&l| l < -tol).count();
    let kind = if zeros > 0 {
        NdKind::Parabolic
    } else if pos == n || neg == n {
        NdKind::Elliptic
    } else if pos == 1 || neg == 1 {
        NdKind::Hyperbolic
    } else {
        NdKind::Ultrahyperbolic
    };
    let scaling = eigenvalues
        .iter()
        .map(|&l| if l.abs() <= tol { None } else { Some(1.0 / l.abs().sqrt()) })
        .collect();
    Ok(NdClassification { kind, eigenvalues, axes, scaling })
}

/// Value of the quadratic form a_ij g_i g_j on a candidate surface normal;
/// characteristic when it vanishes.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceCheck {
    pub value: f64,
    pub characteristic: bool,
    /// The gradient itself was (numerically) zero.
    pub degenerate: bool,
}

pub fn characteristic_surface_check(a: &[Vec<f64>], grad: &[f64]) -> Result<SurfaceCheck> {
    let n = a.len();
    if grad.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::GridMismatch("gradient length must match the form dimension".into()));
    }
    let mut value = 0.0;
    for i in 0..n {
        for j in 0..n {
            value += 0.5 * (a[i][j] + a[j][i]) * grad[i] * grad[j];
        }
    }
    let gnorm: f64 = grad.iter().map(|g| g * g).sum::<f64>();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1e-300)
        * gnorm.max(1e-300);
    let degenerate = gnorm == 0.0;
    Ok(SurfaceCheck { value, characteristic: degenerate || value.abs() <= 1e-12 * scale, degenerate })
}
