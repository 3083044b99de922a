use apem_core::boundary::{apply_fluid_bc, extend_with_ghosts, GHOSTS};
use apem_core::flux::*;
use apem_core::gauss::gauss_residual_from_charge;
use apem_core::onefluid::step;
use apem_core::scaling::*;
use apem_core::state::face_average;
use apem_core::twofluid::step_2f;
use apem_core::*;
use proptest::prelude::*;

fn cell() -> impl Strategy<Value = CellState> {
    (0.05f64..5.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(n, ux, uy)| CellState::from_velocity(n, ux, uy))
}

fn law() -> impl Strategy<Value = PressureLaw> {
    prop_oneof![
        (0.1f64..4.0).prop_map(|t| PressureLaw::Isothermal { t }),
        (0.2f64..3.0, 1.0f64..3.0).prop_map(|(c, gamma)| PressureLaw::Polytropic { c, gamma }),
    ]
}

fn ulp_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 8.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #[test]
    fn flux_consistency(u in cell(), law in law(), mu in 0.0f64..10.0) {
        let f = llf_flux_onefluid(&u, &u, mu, &law);
        let e = exact_flux(&u, &law);
        prop_assert_eq!(f.f_n, e.f_n);
        prop_assert!(ulp_close(f.f_ux, e.f_ux), "{} {}", f.f_ux, e.f_ux);
        prop_assert!(ulp_close(f.f_uy, e.f_uy), "{} {}", f.f_uy, e.f_uy);
    }

    #[test]
    fn mirror_symmetry(l in cell(), r in cell(), law in law()) {
        let w = wave_speed_mu(&l, &r, &law).unwrap();
        let flip = |c: &CellState| CellState::new(c.n, -c.qx, c.qy);
        let wm = wave_speed_mu(&flip(&r), &flip(&l), &law).unwrap();
        prop_assert!(ulp_close(wm.nu_plus, -w.nu_minus));
        prop_assert!(ulp_close(wm.nu_minus, -w.nu_plus));
        prop_assert!(ulp_close(wm.mu, w.mu));
        let f = llf_flux_onefluid(&l, &r, w.mu, &law);
        let fm = llf_flux_onefluid(&flip(&r), &flip(&l), w.mu, &law);
        let tol = 1e-13 * (1.0 + f.f_n.abs() + f.f_ux.abs() + f.f_uy.abs());
        prop_assert!((fm.f_n + f.f_n).abs() <= tol);
        prop_assert!((fm.f_ux - f.f_ux).abs() <= tol);
        prop_assert!((fm.f_uy + f.f_uy).abs() <= tol);
    }

    #[test]
    fn galilean_shift_of_extreme_speeds(l in cell(), r in cell(), law in law(), s in -2.0f64..2.0) {
        let w = wave_speed_mu(&l, &r, &law).unwrap();
        let shift = |c: &CellState| CellState::from_velocity(c.n, c.ux() + s, c.uy());
        let ws = wave_speed_mu(&shift(&l), &shift(&r), &law).unwrap();
        prop_assert!((ws.nu_plus - (w.nu_plus + s)).abs() < 1e-12);
        prop_assert!((ws.nu_minus - (w.nu_minus + s)).abs() < 1e-12);
        prop_assert!((ws.mu - ws.nu_plus.abs().max(ws.nu_minus.abs())).abs() == 0.0);
        prop_assert!(w.mu >= 0.0 && w.nu_plus >= w.nu_minus);
    }

    #[test]
    fn gauss_residual_is_linear(
        rho_a in prop::collection::vec(-2.0f64..2.0, 6),
        rho_b in prop::collection::vec(-2.0f64..2.0, 6),
        ex_a in prop::collection::vec(-2.0f64..2.0, 7),
        ex_b in prop::collection::vec(-2.0f64..2.0, 7),
        alpha in -3.0f64..3.0,
        beta in -3.0f64..3.0,
        lambda in 0.0f64..2.0,
    ) {
        let h = 0.1;
        let comb = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| alpha * x + beta * y).collect() };
        let ra = gauss_residual_from_charge(&rho_a, &ex_a, lambda, h).unwrap();
        let rb = gauss_residual_from_charge(&rho_b, &ex_b, lambda, h).unwrap();
        let rc = gauss_residual_from_charge(&comb(&rho_a, &rho_b), &comb(&ex_a, &ex_b), lambda, h).unwrap();
        for k in 0..6 {
            let want = alpha * ra[k] + beta * rb[k];
            prop_assert!((rc[k] - want).abs() < 1e-11 * (1.0 + want.abs() + lambda * lambda / h * 20.0));
        }
    }

    #[test]
    fn face_average_exact_on_linear(a in -5.0f64..5.0, b in -5.0f64..5.0, n in 1usize..40) {
        let g = Grid1D::new(-1.0, 2.0, n).unwrap();
        let faces: Vec<f64> = g.interfaces().iter().map(|x| a + b * x).collect();
        let c = face_average(&faces).unwrap();
        for (k, v) in c.iter().enumerate() {
            prop_assert!((v - (a + b * g.center(k))).abs() < 1e-12);
        }
    }

    #[test]
    fn scaling_round_trip(
        x0 in 1e-3f64..10.0,
        log_n0 in 14.0f64..24.0,
        t_ev in 0.1f64..1e3,
        value in -1e6f64..1e6,
    ) {
        let u = compute_scaling(x0, 10f64.powf(log_n0), Temperature::ElectronVolt(t_ev), ATOMIC_MASS_UNIT * 12.0).unwrap();
        for q in [Quantity::Length, Quantity::Time, Quantity::Velocity, Quantity::Density, Quantity::ElectricField, Quantity::MagneticField] {
            let back = u.to_dimensionless(q, u.to_physical(q, value));
            prop_assert!((back - value).abs() <= 1e-14 * value.abs().max(1e-300));
        }
        prop_assert!((u.alpha - u.u0 / SPEED_OF_LIGHT).abs() <= 1e-15 * u.alpha);
    }

    #[test]
    fn ghost_construction_is_idempotent(
        n in prop::collection::vec(0.1f64..3.0, 3..12),
        periodic in any::<bool>(),
    ) {
        let len = n.len();
        let s = FluidState::new(n, (0..len).map(|k| k as f64 * 0.1).collect(), vec![0.5; len]).unwrap();
        let bc = if periodic { FluidBc::Periodic } else { FluidBc::Neumann };
        prop_assert_eq!(apply_fluid_bc(&s, bc), apply_fluid_bc(&s, bc));
        let ext = extend_with_ghosts(&s, bc);
        let inner = FluidState::new(
            ext.n[GHOSTS..GHOSTS + len].to_vec(),
            ext.qx[GHOSTS..GHOSTS + len].to_vec(),
            ext.qy[GHOSTS..GHOSTS + len].to_vec(),
        ).unwrap();
        prop_assert_eq!(&inner, &s);
        prop_assert_eq!(extend_with_ghosts(&inner, bc), ext);
    }
}

fn random_fluid(amp: &[f64], n: usize) -> FluidState {
    let g = Grid1D::new(0.0, 1.0, n).unwrap();
    let tau = 2.0 * std::f64::consts::PI;
    let xs = g.centers();
    FluidState::new(
        xs.iter().map(|x| 1.0 + amp[0] * (tau * x).sin() + amp[1] * (2.0 * tau * x).cos()).collect(),
        xs.iter().map(|x| amp[2] * (tau * x).cos()).collect(),
        xs.iter().map(|x| amp[3] * (3.0 * tau * x).sin()).collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn periodic_steps_conserve_mass_and_gauss(
        amp in prop::collection::vec(-0.3f64..0.3, 4),
        lambda in prop_oneof![Just(1.0), Just(1e-2), Just(1e-4)],
        ap in any::<bool>(),
        bz in -0.5f64..0.5,
    ) {
        let n = 24;
        let g = Grid1D::new(0.0, 1.0, n).unwrap();
        let kind = if ap { SchemeKind::Ap } else { SchemeKind::Classical };
        let cfg = SchemeConfig::new(kind, lambda);
        let bc = BoundaryConditionSpec::periodic();
        let mut s = OneFluidSnapshot::new(g, random_fluid(&amp, n), EMField::with_bz(n, bz)).unwrap();
        // periodic Gauss data needs zero net charge
        let mean = s.fluid.total_mass(g.h) / g.length();
        s.fluid.n.iter_mut().for_each(|v| *v /= mean);
        s.init_ex(lambda, 0.0).unwrap();
        let m0 = s.fluid.total_mass(g.h);
        let r0 = s.gauss_residual(lambda).unwrap();
        for _ in 0..30 {
            let d = onefluid::stable_timestep(&s, &cfg, &bc).unwrap();
            step(&mut s, d, &cfg, &bc).unwrap();
        }
        prop_assert!((s.fluid.total_mass(g.h) - m0).abs() < 1e-13);
        let r = s.gauss_residual(lambda).unwrap();
        let drift = r.iter().zip(&r0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(drift < 1e-12, "drift {drift:e}");
    }

    #[test]
    fn two_fluid_gauss_is_exact(
        amp_i in prop::collection::vec(-0.2f64..0.2, 4),
        amp_e in prop::collection::vec(-0.2f64..0.2, 4),
        lambda in prop_oneof![Just(1.0), Just(1e-2), Just(0.0)],
        ap in any::<bool>(),
    ) {
        let n = 20;
        let g = Grid1D::new(0.0, 1.0, n).unwrap();
        let kind = if ap || lambda == 0.0 { SchemeKind::Ap } else { SchemeKind::Classical };
        let cfg = SchemeConfig::new(kind, lambda);
        let bc = BoundaryConditionSpec::neumann_zero_field();
        let ion = random_fluid(&amp_i, n);
        let el = if lambda == 0.0 {
            FluidState::new(ion.n.clone(), random_fluid(&amp_e, n).qx, random_fluid(&amp_e, n).qy).unwrap()
        } else {
            random_fluid(&amp_e, n)
        };
        let mut s = TwoFluidSnapshot::new(g, ion, el, EMField::with_bz(n, 0.1)).unwrap();
        s.init_ex(lambda, 0.0).unwrap();
        let r0 = s.gauss_residual(lambda).unwrap();
        for _ in 0..20 {
            let d = twofluid::stable_timestep_2f(&s, &cfg, &bc).unwrap();
            step_2f(&mut s, d, &cfg, &bc).unwrap();
        }
        let r = s.gauss_residual(lambda).unwrap();
        let drift = r.iter().zip(&r0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(drift < 1e-12, "drift {drift:e}");
        prop_assert!(s.is_finite());
        if lambda == 0.0 {
            prop_assert_eq!(&s.ion.n, &s.electron.n);
        }
    }
}

#[test]
fn zero_field_periodic_hydro_conserves_momentum() {
    // with E and B kept at zero by a large λ the Lorentz force is negligible
    let n = 32;
    let g = Grid1D::new(0.0, 1.0, n).unwrap();
    let mut s = OneFluidSnapshot::new(g, random_fluid(&[0.1, -0.05, 0.2, 0.1], n), EMField::zeros(n)).unwrap();
    let lambda = 1e8;
    s.init_ex(lambda, 0.0).unwrap();
    let cfg = SchemeConfig::ap(lambda);
    let bc = BoundaryConditionSpec::periodic();
    let q0: f64 = s.fluid.qx.iter().sum();
    for _ in 0..20 {
        step(&mut s, 1e-3, &cfg, &bc).unwrap();
    }
    let q1: f64 = s.fluid.qx.iter().sum();
    assert!((q1 - q0).abs() < 1e-12, "{q0} {q1}");
}
