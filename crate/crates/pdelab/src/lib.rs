//! A laboratory for linear (and mildly nonlinear) PDE numerics in one and two
//! space dimensions: finite-difference schemes with von Neumann analysis,
//! iterative elliptic solvers, the method of characteristics, classification
//! and canonical forms, Sturm-Liouville spectra, a library of closed-form
//! solution oracles, and stationary-phase asymptotics. Numerical solvers and
//! analytic solutions are built to be cross-validated against each other.

pub mod characteristics;
pub mod classify;
pub mod dense;
pub mod error;
pub mod grid;
pub mod io;
pub mod iterative;
pub mod oracles;
pub mod quad;
pub mod roots;
pub mod schemes;
pub mod sparse;
pub mod spectral;
pub mod stationary;
pub mod vonneumann;

pub use error::{Error, Result};

use std::sync::Arc;

/// Shared-ownership scalar function of one variable, u(x) or g(t).
pub type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// Scalar function of two variables, typically rho(x, t).
pub type Fn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
/// Scalar function of three variables, typically b(x, t, u).
pub type Fn3 = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;
/// Complex-valued function of one real variable, e.g. a spectral amplitude.
pub type CFn1 = Arc<dyn Fn(f64) -> num_complex::Complex64 + Send + Sync>;

pub fn fn1(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Fn1 {
    Arc::new(f)
}

pub fn fn2(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Fn2 {
    Arc::new(f)
}

pub fn fn3(f: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static) -> Fn3 {
    Arc::new(f)
}

pub fn cfn1(f: impl Fn(f64) -> num_complex::Complex64 + Send + Sync + 'static) -> CFn1 {
    Arc::new(f)
}
