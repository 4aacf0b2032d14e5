//! Adaptive Simpson quadrature, real and complex.

use num_complex::Complex64;

const MAX_DEPTH: u32 = 30;
// Never trust the Richardson estimate before the grid has 2^MIN_DEPTH panels;
// a periodic integrand can vanish at every coarse dyadic node and fake delta = 0.
const MIN_DEPTH: u32 = 5;

fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || (depth >= MIN_DEPTH && delta.abs() <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1)
        + simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1)
}

/// Adaptive Simpson integral of `f` over [a, b] with absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fb = f(b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, fa, b, fb, m, fm, whole, tol.max(f64::MIN_POSITIVE), 0)
}

/// Adaptive Simpson over `panels` equal subintervals; the tolerance is split
/// across panels. Align `panels` with the zero count of an oscillatory factor
/// so no panel sees the integrand only at its roots.
pub fn adaptive_simpson_panels<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    tol: f64,
) -> f64 {
    let panels = panels.max(1);
    let w = (b - a) / panels as f64;
    let panel_tol = (tol / panels as f64).max(1e-14);
    (0..panels)
        .map(|i| adaptive_simpson(&f, a + i as f64 * w, a + (i + 1) as f64 * w, panel_tol))
        .sum()
}

#[allow(clippy::too_many_arguments)]
fn simpson_step_c<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    fa: Complex64,
    b: f64,
    fb: Complex64,
    m: f64,
    fm: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (fa + 4.0 * flm + fm) * ((m - a) / 6.0);
    let right = (fm + 4.0 * frm + fb) * ((b - m) / 6.0);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || (depth >= MIN_DEPTH && delta.norm() <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    simpson_step_c(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1)
        + simpson_step_c(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1)
}

/// Composite Simpson over equally spaced samples with spacing h; the sample
/// count must be odd (an even number of intervals).
pub fn composite_simpson_nodes(h: f64, f: &[f64]) -> f64 {
    assert!(f.len() >= 3 && f.len() % 2 == 1, "need an odd sample count, got {}", f.len());
    let mut acc = f[0] + f[f.len() - 1];
    for (i, &v) in f.iter().enumerate().skip(1).take(f.len() - 2) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    acc * h / 3.0
}

/// Complex-valued adaptive Simpson; tolerance applies to the modulus.
pub fn adaptive_simpson_c<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fb = f(b);
    let fm = f(m);
    let whole = (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
    simpson_step_c(&f, a, fa, b, fb, m, fm, whole, tol.max(f64::MIN_POSITIVE), 0)
}
