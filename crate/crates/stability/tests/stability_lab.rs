use apem_stability::polynomial::{poly_eval, poly_mul, relative_residual};
use apem_stability::*;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(triple: Triple, lambda: f64, delta: f64, h: f64, gamma: f64, t: f64, xi: f64) -> StabilityConfig {
    StabilityConfig { triple, lambda, delta, h, gamma, t, xi }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Direct evaluation of the unexpanded product forms.
fn p_direct(s: &StabilityConfig, q: Complex64) -> Complex64 {
    let (l2, d2, x2, b) = (s.lambda * s.lambda, s.delta * s.delta, s.xi * s.xi, s.gamma * s.h);
    let damp = q - 1.0 + b * x2 * s.delta;
    l2 * (q - 1.0) * (q - 1.0) * damp + q.powi(s.triple.d() as i32) * d2 * x2 * damp + q.powi(s.triple.a as i32 + 1) * d2 * (q - 1.0)
}

fn q_direct(s: &StabilityConfig, q: Complex64) -> Complex64 {
    let (l2, d2, x2, b) = (s.lambda * s.lambda, s.delta * s.delta, s.xi * s.xi, s.gamma * s.h);
    let damp = q - 1.0 + b * x2 * s.delta;
    let a = s.triple.a as i32;
    l2 * (q - 1.0) * damp + q.powi(a + 1) * d2 + s.t * d2 * l2 * x2 * q.powi(a) + b * s.delta * l2 * damp * x2
}

fn shift_eval(z: &[f64], q: Complex64) -> Complex64 {
    poly_eval(z, q - 1.0)
}

#[test]
fn expansion_matches_product_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for triple in Triple::ALL {
        let s = cfg(triple, 0.3, 0.02, 0.05, 0.5, 1.3, 17.0);
        let (pe, qe) = (em_polynomial(&s), es_polynomial(&s));
        let (pz, qz) = (em_polynomial_shifted(&s), es_polynomial_shifted(&s));
        assert_eq!(pe.len(), 4);
        assert!(qe.len() <= 3);
        for _ in 0..5 {
            let q = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let scale = pe.iter().chain(&qe).fold(0.0_f64, |m, v| m.max(v.abs())) * 16.0;
            assert!((poly_eval(&pe, q) - p_direct(&s, q)).norm() <= 1e-12 * scale);
            assert!((poly_eval(&qe, q) - q_direct(&s, q)).norm() <= 1e-12 * scale);
            assert!((shift_eval(&pz, q) - p_direct(&s, q)).norm() <= 1e-12 * scale);
            assert!((shift_eval(&qz, q) - q_direct(&s, q)).norm() <= 1e-12 * scale);
        }
    }
}

#[test]
fn zero_wavenumber_factorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for triple in Triple::ALL {
        let s = cfg(triple, 0.7, 0.05, 0.1, 0.5, 1.0, 0.0);
        let p = em_polynomial(&s);
        for _ in 0..5 {
            let q = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let want = (q - 1.0) * (s.lambda * s.lambda * (q - 1.0) * (q - 1.0) + q.powi(triple.a as i32 + 1) * s.delta * s.delta);
            assert!((poly_eval(&p, q) - want).norm() < 1e-13);
        }
    }
}

#[test]
fn implicit_zero_wavenumber_roots() {
    let (l, d) = (0.8, 0.3);
    let s = cfg(Triple::AP, l, d, 0.1, 0.5, 1.0, 0.0);
    let roots = polynomial_roots(&em_polynomial(&s)).unwrap();
    assert_eq!(roots.degree(), 3);
    let den = l * l + d * d;
    let expected = [c(1.0, 0.0), c(l * l / den, l * d / den), c(l * l / den, -l * d / den)];
    for e in expected {
        assert!(roots.roots.iter().any(|r| (r - e).norm() < 1e-12), "{e} not in {:?}", roots.roots);
    }
    let modulus = l / den.sqrt();
    assert!(modulus < 1.0);
    assert!(roots.roots.iter().filter(|r| (r.norm() - modulus).abs() < 1e-12).count() == 2);
}

#[test]
fn electrostatic_polynomial_at_zero_lambda() {
    for a in [0u8, 1] {
        let s = cfg(Triple::new(a, 1, 1).unwrap(), 0.0, 0.1, 0.1, 0.5, 1.0, 5.0);
        let q = es_polynomial(&s);
        let nz: Vec<usize> = (0..q.len()).filter(|&i| q[i] != 0.0).collect();
        assert_eq!(nz, vec![a as usize + 1]);
        assert!((q[a as usize + 1] - 0.01).abs() < 1e-15);
        let r = polynomial_roots(&q).unwrap();
        assert_eq!(r.degree(), a as usize + 1);
        assert!(r.roots.iter().all(|z| z.norm() == 0.0));
    }
}

#[test]
fn explicit_scheme_root_blows_up_as_lambda_vanishes() {
    let (d, h, gamma, t, xi) = (0.01, 0.01, 0.5, 1.0, 30.0);
    let beta = gamma * h;
    for lambda in [1e-4, 1e-5, 1e-6] {
        let s = cfg(Triple::CLASSICAL, lambda, d, h, gamma, t, xi);
        let roots = polynomial_roots(&es_polynomial(&s)).unwrap();
        // Vieta: the two roots sum to 2 - βδξ² - (βδξ² + δ²/λ²), the small one is O(λ²/δ²)
        let sum = 2.0 - 2.0 * beta * d * xi * xi - d * d / (lambda * lambda);
        let big = roots.roots.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
        assert!((big.re / sum - 1.0).abs() < 1e-6, "lambda {lambda}: {big} vs {sum:e}");
        assert!(roots.max_modulus > 0.99 * d * d / (lambda * lambda));
    }
}

#[test]
fn root_examples() {
    let r = polynomial_roots(&[-6.0, 11.0, -6.0, 1.0]).unwrap();
    let mut re: Vec<f64> = r.roots.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    for (got, want) in re.iter().zip([1.0, 2.0, 3.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    assert!(r.roots.iter().all(|z| z.im.abs() < 1e-12));
    assert!((r.max_modulus - 3.0).abs() < 1e-12);

    let r = polynomial_roots(&[1.0, 0.0, 1.0]).unwrap();
    assert!(r.roots.iter().any(|z| (z - c(0.0, 1.0)).norm() < 1e-14));
    assert!(r.roots.iter().any(|z| (z - c(0.0, -1.0)).norm() < 1e-14));

    assert_eq!(polynomial_roots(&[0.0, 0.0]), Err(StabilityError::ZeroPolynomial));
    assert_eq!(polynomial_roots(&[3.0, 0.0]).unwrap().degree(), 0);
    assert_eq!(polynomial_roots(&[2.0, 1.0, 0.0]).unwrap().roots, vec![c(-2.0, 0.0)]);
}

proptest! {
    #[test]
    fn constructed_cubic_roots_are_recovered(
        r0 in -3.0f64..3.0,
        re in -3.0f64..3.0,
        im in 0.05f64..3.0,
        lead in prop_oneof![0.5f64..4.0, -4.0f64..-0.5],
    ) {
        // (q - r0)(q² - 2re q + re² + im²)
        let coeffs: Vec<f64> = poly_mul(&[-r0, 1.0], &[re * re + im * im, -2.0 * re, 1.0]).iter().map(|v| v * lead).collect();
        let roots = polynomial_roots(&coeffs).unwrap();
        prop_assert_eq!(roots.degree(), 3);
        for want in [c(r0, 0.0), c(re, im), c(re, -im)] {
            prop_assert!(roots.roots.iter().any(|z| (z - want).norm() < 1e-10), "{want} missing from {:?}", roots.roots);
        }
    }

    #[test]
    fn roots_have_small_residual_and_come_in_conjugate_pairs(
        a in 0u8..2, b in 0u8..2, cc in 0u8..2,
        log_lambda in -8.0f64..0.0,
        ratio in 0.01f64..2.0,
        frac in 0.0f64..1.0,
        t in 0.2f64..3.0,
    ) {
        let h = 0.02;
        let s = cfg(Triple::new(a, b, cc).unwrap(), 10f64.powf(log_lambda), ratio * h, h, 0.5, t, frac * std::f64::consts::PI / h);
        for p in [em_polynomial(&s), es_polynomial(&s)] {
            let roots = polynomial_roots(&p).unwrap();
            prop_assert!(roots.is_conjugate_closed(1e-8));
            for z in &roots.roots {
                prop_assert!(relative_residual(&p, *z) < 1e-12, "residual {}", relative_residual(&p, *z));
            }
        }
    }
}

#[test]
fn absolute_root_residual_for_moderate_configs() {
    let s = cfg(Triple::AP, 0.5, 0.02, 0.05, 0.5, 1.0, 20.0);
    for p in [em_polynomial(&s), es_polynomial(&s)] {
        let cmax = p.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        for z in polynomial_roots(&p).unwrap().roots {
            assert!(poly_eval(&p, z).norm() <= 1e-10 * cmax);
        }
    }
}

#[test]
fn ap_scheme_stable_at_unit_lambda() {
    let p = ModelParams { h: 0.1, gamma: 0.5, t: 1.0, n_xi: 2049 };
    let g = max_growth_factor(Triple::AP, 1.0, 0.01, &p).unwrap();
    assert!(g.max_growth <= 1.0 + 1e-10, "{g:?}");
}

#[test]
fn classical_scheme_unstable_for_small_lambda() {
    let p = ModelParams { h: 1e-2, gamma: 0.5, t: 1.0, n_xi: 2049 };
    let (lambda, delta) = (1e-3, 1e-2);
    let g = max_growth_factor(Triple::CLASSICAL, lambda, delta, &p).unwrap();
    let xi = std::f64::consts::PI / p.h;
    let predicted = delta * delta * (1.0 + xi * xi) / (lambda * lambda);
    assert!(g.max_growth > 1e3);
    assert!((g.max_growth / predicted - 1.0).abs() < 0.1, "{} vs {predicted}", g.max_growth);
}

#[test]
fn semi_implicit_root_near_closed_form_limit() {
    let xi = 2.0;
    let s = cfg(Triple::new(1, 1, 0).unwrap(), 1e-6, 0.01, 0.01, 0.0, 1.0, xi);
    let half = (1.0 - xi * xi) / 2.0;
    let q_minus = half - (half * half + xi * xi).sqrt();
    assert!((q_minus + 4.0).abs() < 1e-14);
    let roots = polynomial_roots(&em_polynomial(&s)).unwrap();
    assert!(roots.roots.iter().any(|z| (z - c(q_minus, 0.0)).norm() < 1e-6), "{:?}", roots.roots);

    let p = ModelParams { h: 0.01, gamma: 0.0, t: 1.0, n_xi: 2049 };
    assert!(max_growth_factor(Triple::new(1, 1, 0).unwrap(), 1e-6, 0.01, &p).unwrap().max_growth >= 4.0);
}

#[test]
fn ap_region_scan_and_bisection() {
    let h = 0.01;
    let p = ModelParams::with_default_gamma(h, 1.0);
    let bound = 2.0 / (p.gamma * std::f64::consts::PI.powi(2));
    let lambdas = [1.0, 1e-2, 1e-4, 1e-8];
    let gamma_limit = bisect_stability_limit(Triple::AP, &lambdas, 1e-3, 1.0, 1e-3, &p).unwrap();
    assert!(gamma_limit > 0.05 && gamma_limit <= bound, "{gamma_limit}");
    let rows = stability_region_scan(Triple::AP, &lambdas, &[0.25 * gamma_limit, 0.5 * gamma_limit, gamma_limit], &p).unwrap();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.stable), "{rows:?}");

    let b4 = bisect_stability_limit(Triple::AP, &[1e-4], 1e-3, 1.0, 1e-3, &p).unwrap();
    let b8 = bisect_stability_limit(Triple::AP, &[1e-8], 1e-3, 1.0, 1e-3, &p).unwrap();
    assert!((b4 - b8).abs() < 0.1 * b8, "{b4} {b8}");
}

#[test]
fn classical_unstable_beyond_light_speed_step() {
    let p = ModelParams::with_default_gamma(0.01, 1.0);
    for lambda in [1e-2, 1e-3] {
        let rows = stability_region_scan(Triple::CLASSICAL, &[lambda], &[0.25 * lambda, 2.0 * lambda, 10.0 * lambda], &p).unwrap();
        assert!(rows[0].stable, "{rows:?}");
        assert!(!rows[1].stable && !rows[2].stable, "{rows:?}");
    }
}

#[test]
fn non_ap_triples_blow_up_at_small_lambda() {
    let p = ModelParams::with_default_gamma(0.01, 1.0);
    for t in ["0,1,0", "0,0,1", "1,1,0", "1,0,1"] {
        let triple: Triple = t.parse().unwrap();
        let g = max_growth_factor(triple, 1e-4, 0.2 * p.h, &p).unwrap();
        assert!(g.max_growth > 1.5, "{t}: {g:?}");
    }
}

#[test]
fn stability_csv_layout() {
    let p = ModelParams { h: 0.1, gamma: 0.5, t: 1.0, n_xi: 33 };
    let rows = stability_region_scan(Triple::AP, &[1.0], &[0.1, 0.2], &p).unwrap();
    let mut buf = Vec::new();
    write_stability_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,b,c,lambda,dt_over_h,max_growth,stable");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,1,1,"));
    assert_eq!(lines[1].split(',').count(), 7);
}

#[test]
fn triple_parsing() {
    assert_eq!("(1,1,1)".parse::<Triple>().unwrap(), Triple::AP);
    assert_eq!(" 0, 0 ,1".parse::<Triple>().unwrap(), Triple::CLASSICAL);
    assert!("1,2,0".parse::<Triple>().is_err());
    assert!("1,1".parse::<Triple>().is_err());
    assert_eq!(Triple::AP.to_string(), "(1,1,1)");
}

#[test]
fn invalid_scan_inputs() {
    let p = ModelParams { h: 0.1, gamma: 0.5, t: 1.0, n_xi: 1 };
    assert!(max_growth_factor(Triple::AP, 1.0, 0.01, &p).is_err());
    let s = cfg(Triple::AP, 1.0, 0.01, 0.1, 0.5, 1.0, 100.0);
    assert!(s.validate().is_err());
}

/// Fourier-space matrix `M` of the linear ODE system `∂t U = M U` for
/// `U = (n, u, E, B)` with `ξ` along x. Modes `e^{-st}` have `M + sI` singular.
fn ode_matrix(lambda: f64, t: f64, xi: f64) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(10, 10);
    let i = c(0.0, 1.0);
    let l2 = lambda * lambda;
    let k = [xi, 0.0, 0.0];
    // (k × V)_comp as coefficients on the components of V starting at `v`
    let cross = |v: usize, comp: usize| -> [(usize, f64); 2] {
        let (a, b) = ((comp + 1) % 3, (comp + 2) % 3);
        [(v + b, k[a]), (v + a, -k[b])]
    };
    for d in 0..3 {
        m[(0, 1 + d)] -= i * k[d];
        m[(1 + d, 0)] -= i * t * k[d];
        m[(1 + d, 4 + d)] -= c(1.0, 0.0);
        for (col, coef) in cross(4, d) {
            m[(7 + d, col)] -= i * coef;
        }
        for (col, coef) in cross(7, d) {
            m[(4 + d, col)] += i * coef / l2;
        }
        m[(4 + d, 1 + d)] += c(1.0 / l2, 0.0);
    }
    m
}

fn singularity(m: &DMatrix<Complex64>, s: Complex64) -> f64 {
    let shifted = m + DMatrix::<Complex64>::identity(10, 10) * s;
    let sv = shifted.singular_values();
    sv.min() / sv.max()
}

#[test]
fn dispersion_examples() {
    let m = dispersion_modes(1.0, 1.0, 0.0);
    assert_eq!(m.em, [c(0.0, 1.0), c(0.0, -1.0)]);
    assert_eq!(m.es, [c(0.0, 1.0), c(0.0, -1.0)]);

    let m = dispersion_modes(0.5, 1.0, 1.0);
    assert!((m.em[0] - c(0.0, 2.0 * 2f64.sqrt())).norm() < 1e-14);
    assert!((m.es[0] - c(0.0, 5f64.sqrt())).norm() < 1e-14);
    assert_eq!(m.em[1], -m.em[0]);

    let a = dispersion_modes(0.1, 2.0, 3.0);
    let b = dispersion_modes(0.05, 2.0, 3.0);
    assert!((b.em[0].im / a.em[0].im - 2.0).abs() < 1e-14);
    assert!(dispersion_modes(0.0, 1.0, 1.0).is_infinite());
    assert!(!a.is_infinite());
}

#[test]
fn dispersion_matches_ode_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let lambda = 10f64.powf(rng.gen_range(-3.0..1.0));
        let t = rng.gen_range(0.1..5.0);
        let xi = rng.gen_range(-20.0..20.0);
        let m = ode_matrix(lambda, t, xi);
        let modes = dispersion_modes(lambda, t, xi);
        let mut worst: f64 = 0.0;
        for s in modes.em.iter().chain(&modes.es) {
            let r = singularity(&m, *s);
            assert!(r < 1e-10, "lambda {lambda} T {t} xi {xi}: {s} gives {r:e}");
            worst = worst.max(r);
        }
        let off = singularity(&m, modes.em[0] * 1.3 + 0.7 / lambda);
        assert!(off > 1e3 * worst, "{off:e} vs {worst:e}");
    }
}
