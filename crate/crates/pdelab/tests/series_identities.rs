//! Cross-checks between independent analytic routes: d'Alembert vs the
//! characteristic parallelogram, series solutions vs conservation laws,
//! and eigenfunction machinery vs direct quadrature.

use std::f64::consts::PI;

use pdelab::oracles::{
    dalembert, erf_solution, fourier_coeffs, halfline_heat, heat_series, sl_shoot, wave_series,
    FourierBasis, SlProblem,
};
use pdelab::quad::{adaptive_simpson, composite_simpson_nodes};
use pdelab::fn1;

#[test]
fn dalembert_satisfies_the_parallelogram_identity() {
    let f = fn1(|x: f64| (-(x * x)).exp() * (3.0 * x).cos());
    let g = fn1(|x: f64| x * (-(x * x)).exp());
    let c = 0.7;
    let u = dalembert(f, g, c).unwrap();
    // vertices A, B, C, D of a characteristic parallelogram satisfy
    // u(A) + u(C) = u(B) + u(D); A bottom, C top, B left, D right
    for &(x0, t0, p, q) in
        &[(0.3, 0.4, 0.25, 0.6), (-1.1, 0.0, 0.5, 0.5), (0.0, 1.3, 0.8, 0.1), (2.0, 0.7, 0.3, 0.9)]
    {
        let a = u(x0, t0);
        let b = u(x0 - c * p, t0 + p);
        let d = u(x0 + c * q, t0 + q);
        let cc = u(x0 + c * (q - p), t0 + p + q);
        assert!(
            (a + cc - b - d).abs() < 1e-6,
            "parallelogram at ({x0}, {t0}): {}",
            a + cc - b - d
        );
    }
}

#[test]
fn dalembert_matches_its_initial_data() {
    let f = fn1(|x: f64| 1.0 / (1.0 + x * x));
    let g = fn1(|x: f64| (-x * x / 2.0).exp());
    let c = 1.3;
    let u = dalembert(f.clone(), g.clone(), c).unwrap();
    for &x in &[-2.0, -0.3, 0.0, 0.9, 1.7] {
        assert!((u(x, 0.0) - f(x)).abs() < 1e-9, "u(x,0) at {x}");
        // centered difference pins the 1/(2c) factor in the velocity term
        let d = 1e-5;
        let ut = (u(x, d) - u(x, -d)) / (2.0 * d);
        assert!((ut - g(x)).abs() < 1e-5, "u_t(x,0) at {x}: {ut} vs {}", g(x));
    }
}

#[test]
fn wave_series_conserves_energy_over_a_period() {
    let (c, l) = (1.0, 1.0);
    let f = |x: f64| x * (1.0 - x) * (2.0 + (3.0 * PI * x).cos());
    let g = |x: f64| (PI * x).sin() - 0.4 * (2.0 * PI * x).sin();
    let u = wave_series(f, g, c, l, 40).unwrap();
    // E(t) = 1/2 int u_t^2 + c^2 u_x^2 dx by finite differences + Simpson
    let energy = |t: f64| -> f64 {
        let n = 400usize;
        let h = l / n as f64;
        let d = 1e-5;
        let vals: Vec<f64> = (0..=n)
            .map(|i| {
                let x = i as f64 * h;
                let ut = (u(x, t + d) - u(x, t - d)) / (2.0 * d);
                // one-sided in x at the walls
                let ux = if i == 0 {
                    (u(x + d, t) - u(x, t)) / d
                } else if i == n {
                    (u(x, t) - u(x - d, t)) / d
                } else {
                    (u(x + d, t) - u(x - d, t)) / (2.0 * d)
                };
                0.5 * (ut * ut + c * c * ux * ux)
            })
            .collect();
        composite_simpson_nodes(h, &vals)
    };
    let e0 = energy(0.1);
    for &t in &[0.35, 0.8, 1.4, 2.1] {
        assert!((energy(t) - e0).abs() < 1e-3 * e0, "E({t}) = {} vs {e0}", energy(t));
    }
}

#[test]
fn heat_series_step_data_relaxes_the_jump_to_its_mean() {
    // u(x0, t) -> (f(x0-) + f(x0+)) / 2 as t -> 0 at the jump
    let x0 = 0.5;
    let f = move |x: f64| if x < x0 { 1.0 } else { 0.0 };
    let coarse = heat_series(f, 1.0, 1.0, 50).unwrap();
    let fine = heat_series(f, 1.0, 1.0, 200).unwrap();
    let t = 1e-6;
    let err_coarse = (coarse(x0, t) - 0.5).abs();
    let err_fine = (fine(x0, t) - 0.5).abs();
    assert!(err_fine < 0.01, "K=200 midpoint error {err_fine}");
    assert!(err_fine < err_coarse, "truncation should improve: {err_coarse} -> {err_fine}");
}

#[test]
fn bessel_partial_sums_climb_to_parseval() {
    let l = 1.0;
    let f = |x: f64| x * (1.0 - x);
    let norm2 = adaptive_simpson(|x| f(x) * f(x), 0.0, l, 1e-13);
    let coeffs = fourier_coeffs(f, FourierBasis::Sine, l, 200).unwrap();
    let a = coeffs.flat();
    let mut partial = 0.0;
    let mut prev = 0.0;
    for (k, ak) in a.iter().enumerate() {
        partial += ak * ak;
        assert!(partial >= prev, "partial sums must be monotone");
        assert!(partial <= norm2 + 1e-12, "Bessel violated at k = {}", k + 1);
        prev = partial;
    }
    assert!((norm2 - partial).abs() < 1e-6, "Parseval gap {}", norm2 - partial);
}

#[test]
fn shooting_eigenfunctions_are_rho_orthogonal() {
    // weighted problem: -(p u')' + q u = lambda rho u on (0, 1)
    let problem = SlProblem::new(
        fn1(|x| 1.0 + 0.5 * x),
        fn1(|x| x * x),
        fn1(|x| 1.0 + x),
        1.0,
        1.0,
        0.0,
        1.0,
        0.0,
    )
    .unwrap();
    let pairs = sl_shoot(&problem, 0.5, 200.0).unwrap();
    assert!(pairs.len() >= 3, "found {} eigenvalues", pairs.len());
    let n = pairs[0].u.values.len();
    let h = 1.0 / (n - 1) as f64;
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            let prod: Vec<f64> = (0..n)
                .map(|m| {
                    let x = m as f64 * h;
                    pairs[i].u.values[m] * pairs[j].u.values[m] * (1.0 + x)
                })
                .collect();
            let ip = composite_simpson_nodes(h, &prod);
            let target = if i == j { 1.0 } else { 0.0 };
            assert!((ip - target).abs() < 1e-8, "(u_{i}, u_{j})_rho = {ip}");
        }
    }
}

#[test]
fn halfline_boundary_route_agrees_with_the_erf_closed_form() {
    // zero boundary data, constant initial data: the quadrature route and
    // u0 erf(x / 2c sqrt(t)) must coincide
    let (u0, c) = (2.0, 0.8);
    for &(x, t) in &[(0.5, 0.2), (1.0, 1.0), (0.1, 0.05), (3.0, 0.5)] {
        let a = halfline_heat(|_| u0, |_| 0.0, c, x, t).unwrap();
        let b = erf_solution(u0, c, x, t).unwrap();
        assert!((a - b).abs() < 1e-6, "x = {x}, t = {t}: {a} vs {b}");
    }
}

#[test]
fn heated_end_solution_solves_the_pde_in_the_interior() {
    // boundary forcing g(t) = sin t, zero initial data; check u_t = c^2 u_xx
    // by second differences well inside the domain
    let c = 1.0;
    let u = |x: f64, t: f64| halfline_heat(|_| 0.0, |tau: f64| tau.sin(), c, x, t).unwrap();
    let (x, t) = (0.8, 0.6);
    let (dx, dt) = (1e-3, 1e-4);
    let ut = (u(x, t + dt) - u(x, t - dt)) / (2.0 * dt);
    let uxx = (u(x + dx, t) - 2.0 * u(x, t) + u(x - dx, t)) / (dx * dx);
    assert!((ut - c * c * uxx).abs() < 1e-3, "residual {}", ut - c * c * uxx);
}

#[test]
fn full_range_series_of_an_odd_extension_matches_the_sine_route() {
    let l = 1.0;
    let f = |x: f64| x * (1.0 - x.abs()) * 0.5;
    let sine = fourier_coeffs(f, FourierBasis::Sine, l, 12).unwrap();
    let full = fourier_coeffs(f, FourierBasis::Full, l, 12).unwrap();
    for &x in &[0.1, 0.37, 0.62, 0.9] {
        let (gs, gf) = (sine.reconstruct(x), full.reconstruct(x));
        assert!((gs - gf).abs() < 1e-9, "x = {x}: {gs} vs {gf}");
    }
}

#[test]
fn dalembert_with_still_data_is_the_average_of_two_translates() {
    let phi = fn1(|x: f64| (-(x - 1.0) * (x - 1.0)).exp());
    let u = dalembert(phi.clone(), fn1(|_| 0.0), 2.0).unwrap();
    for &(x, t) in &[(0.0, 0.3), (1.5, 1.0), (-2.0, 2.5)] {
        let exact = 0.5 * (phi(x + 2.0 * t) + phi(x - 2.0 * t));
        assert!((u(x, t) - exact).abs() < 1e-12);
    }
}
