use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use proptest::prelude::*;
use thermospin::fisher_classical::{pure_state_cfi, qubit_closed_form, transverse_axes};
use thermospin::fisher_quantum::{pure_state_qfi, qfi_from_sld};
use thermospin::thermal::density_matrix;
use thermospin::*;

fn setup(two_s: u32, delta: f64) -> (Spin, ThermalSpinState) {
    let spin = Spin::from_two_s(two_s).unwrap();
    let st = thermal_state(spin.length(), delta).unwrap();
    (spin, st)
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

#[test]
fn chain_holds_on_grid() {
    let mut worst_gap = 0.0f64;
    for two_s in [1u32, 2, 3, 4, 10] {
        let spin = Spin::from_two_s(two_s).unwrap();
        for delta in linspace(-6.0, 6.0, 40) {
            let st = thermal_state(spin.length(), delta).unwrap();
            let point = ParamPoint::new(0.4, delta, 1.0, 1.0).unwrap();
            let h = qfi(&st, &point).unwrap().h;
            for i in 1..=40 {
                let phi = -FRAC_PI_2 + PI * i as f64 / 40.0;
                let r = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(phi)).unwrap();
                let p = r.p.unwrap_or(0.0);
                assert!(p <= r.f + 1e-9, "2S={two_s} δ={delta} φ={phi}: P {p} > F {}", r.f);
                assert!(r.f <= h + 1e-9, "2S={two_s} δ={delta} φ={phi}: F {} > H {h}", r.f);
                worst_gap = worst_gap.max(r.f - p);
            }
        }
    }
    println!("largest F - P on the grid: {worst_gap:.3e}");
}

#[test]
fn optimal_axis_saturates_everything() {
    for two_s in [1u32, 2, 3, 4, 10, 20] {
        for delta in [-3.0, 0.1, 1.0, 4.0] {
            for (td, dd) in [(1.0, 1.0), (0.3, -2.0), (-1.5, 0.2)] {
                let (spin, st) = setup(two_s, delta);
                let point = ParamPoint::new(1.0, delta, td, dd).unwrap();
                let q = qfi(&st, &point).unwrap();
                let axis = MeasurementAxis::in_plane(q.phi_opt.unwrap());
                let r = cfi(&spin, &st, &point, &axis).unwrap();
                assert!((r.f - q.h).abs() < 1e-9 * q.h, "F {} H {}", r.f, q.h);
                assert!((r.p.unwrap() - q.h).abs() < 1e-9 * q.h);
            }
        }
    }
}

#[test]
fn optimal_angle_is_argmax_of_cfi() {
    let (spin, st) = setup(2, 1.0);
    let point = ParamPoint::new(0.2, 1.0, 1.0, 1.0).unwrap();
    let scan: Vec<(f64, f64)> = linspace(-FRAC_PI_2, FRAC_PI_2, 20001)
        .map(|phi| (phi, cfi(&spin, &st, &point, &MeasurementAxis::in_plane(phi)).unwrap().f))
        .collect();
    let best = scan.iter().copied().fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let phi_opt = optimal_angle(&point).unwrap();
    assert!((best.0 - phi_opt).abs() < 2e-4, "argmax {} vs {phi_opt}", best.0);
    assert!(phi_opt > 0.0);
}

#[test]
fn qubit_closed_form_on_grid() {
    let spin = Spin::from_two_s(1).unwrap();
    for delta in linspace(0.05, 8.0, 20) {
        let st = thermal_state(spin.length(), delta).unwrap();
        let point = ParamPoint::new(0.7, delta, 1.0, 1.0).unwrap();
        for phi in linspace(-1.5, 1.5, 20) {
            let r = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(phi)).unwrap();
            let closed = qubit_closed_form(&point, phi);
            assert!((r.f - closed).abs() < 1e-10 * closed.max(1e-300));
            assert!((r.p.unwrap() - r.f).abs() < 1e-10 * r.f);
        }
    }
}

#[test]
fn zero_temperature_any_in_plane_axis_is_optimal() {
    for two_s in [1u32, 2, 5, 10] {
        let (spin, st) = setup(two_s, 1e3);
        let point = ParamPoint::new(0.9, 1e3, 1.0, 0.0).unwrap();
        let h = qfi(&st, &point).unwrap().h;
        let two_m = -(two_s as i32);
        assert!((h - pure_state_qfi(spin.length(), two_m, 1.0).unwrap()).abs() < 1e-6);
        for phi in [FRAC_PI_6, FRAC_PI_3, FRAC_PI_2, -1.0, 2.5] {
            let f = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(phi)).unwrap().f;
            assert!((f - h).abs() < 1e-6 * h, "2S={two_s} φ={phi}: {f} vs {h}");
        }
        let (nx, ny) = transverse_axes(0.9);
        assert_eq!(pure_state_cfi(spin.length(), two_m, 1.0, &ny, &nx, &ny).unwrap(), 0.0);
    }
}

#[test]
fn tilted_axis_follows_pure_state_ratio() {
    let (spin, st) = setup(6, 1e3);
    let theta = 0.35;
    let point = ParamPoint::new(theta, 1e3, 1.0, 0.0).unwrap();
    let (nx, ny) = transverse_axes(theta);
    for (phi, gamma) in [(0.6, 0.3), (1.2, -0.9), (FRAC_PI_2, FRAC_PI_6)] {
        let axis = MeasurementAxis::new(phi, gamma).unwrap();
        let f = cfi(&spin, &st, &point, &axis).unwrap().f;
        let expected = pure_state_cfi(spin.length(), -6, 1.0, &axis.lab_vector(theta), &nx, &ny).unwrap();
        assert!((f - expected).abs() < 1e-6 * expected, "{f} vs {expected}");
    }
}

#[test]
fn a_theta_theta_dips_along_the_field() {
    for two_s in [2u32, 10] {
        let (spin, st) = setup(two_s, 3.0);
        let point = ParamPoint::new(0.0, 3.0, 1.0, 1.0).unwrap();
        let a = |phi: f64| cfi(&spin, &st, &point, &MeasurementAxis::in_plane(phi)).unwrap().a_tt;
        for centre in [0.0, PI] {
            assert!(a(centre) < a(centre - 0.1) && a(centre) < a(centre + 0.1));
        }
    }
}

#[test]
fn intensity_term_at_high_temperature() {
    for two_s in [1u32, 2, 10] {
        let (spin, st) = setup(two_s, 1e-3);
        let point = ParamPoint::new(0.0, 1e-3, 1.0, 1.0).unwrap();
        let r = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(0.0)).unwrap();
        let target = spin.length().casimir() / 3.0;
        assert!((r.a_dd - target).abs() < 1e-4 * target);
    }
}

#[test]
fn ensemble_gap_spin_one() {
    let (spin, st) = setup(2, 1.0);
    let point = ParamPoint::new(0.0, 1.0, 1.0, 1.0).unwrap();
    let r = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(0.3)).unwrap();
    let p = r.p.unwrap();
    assert!(p <= r.f + 1e-10);
    assert!(r.f - p > 0.0);
}

#[test]
fn report_is_consistent() {
    let (spin, st) = setup(3, 0.8);
    let point = ParamPoint::new(0.1, 0.8, 0.5, -0.5).unwrap();
    let r = fisher_report(&spin, &st, &point, &MeasurementAxis::in_plane(0.4)).unwrap();
    assert!((r.h - (r.h_c * 0.25 + r.h_q * 0.25)).abs() < 1e-12 * r.h);
    assert!(r.p.unwrap() <= r.f + 1e-10 && r.f <= r.h + 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn qfi_equals_trace_with_own_sld(
        two_s in 1u32..=12, delta in -5.0f64..5.0, theta in 0.0f64..PI,
        td in -2.0f64..2.0, dd in -2.0f64..2.0,
    ) {
        let (spin, st) = setup(two_s, delta);
        let point = ParamPoint::new(theta, delta, td, dd).unwrap();
        let h = qfi(&st, &point).unwrap().h;
        let l = sld_operator(&spin, &st, &point).unwrap();
        let rho = density_matrix(&spin, &st, theta);
        let tr = qfi_from_sld(&rho, &l);
        prop_assert!((h - tr).abs() <= 1e-10 * h.max(1e-12));
        prop_assert!((&rho * &l).trace().norm() < 1e-11);
    }

    #[test]
    fn qfi_is_frame_invariant(two_s in 1u32..=20, delta in -8.0f64..8.0, t1 in -4.0f64..4.0, t2 in -4.0f64..4.0) {
        let st = thermal_state(SpinLength::new(two_s).unwrap(), delta).unwrap();
        let a = qfi(&st, &ParamPoint::new(t1, delta, 0.7, -1.1).unwrap()).unwrap();
        let b = qfi(&st, &ParamPoint::new(t2, delta, 0.7, -1.1).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn qfi_coefficients_are_bounded_and_monotone(two_s in 1u32..=20, d in 0.0f64..30.0, gap in 1e-2f64..3.0) {
        let sl = SpinLength::new(two_s).unwrap();
        let pt = |delta: f64| ParamPoint::new(0.0, delta, 1.0, 1.0).unwrap();
        let near = qfi(&thermal_state(sl, d).unwrap(), &pt(d)).unwrap();
        let mirrored = qfi(&thermal_state(sl, -d).unwrap(), &pt(-d)).unwrap();
        let far = qfi(&thermal_state(sl, d + gap).unwrap(), &pt(d + gap)).unwrap();
        prop_assert!(near.h_c >= 0.0 && near.h_c <= sl.casimir() / 3.0 + 1e-12);
        prop_assert!(near.h_q >= 0.0 && near.h_q <= 2.0 * sl.value() + 1e-12);
        prop_assert!((near.h_c - mirrored.h_c).abs() < 1e-12 * sl.casimir());
        prop_assert!(far.h_c <= near.h_c + 1e-15);
        let sx2 = |r: &QfiReport, delta: f64| r.h_q / (0.5 * delta).tanh().powi(2);
        if d > 1e-3 {
            prop_assert!(sx2(&far, d + gap) <= sx2(&near, d) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn optimal_axis_beats_every_other(
        two_s in 1u32..=8, delta in -5.0f64..5.0, td in -2.0f64..2.0, dd in -2.0f64..2.0, phi in -PI..PI,
    ) {
        prop_assume!(td.abs() + dd.abs() > 1e-3);
        let (spin, st) = setup(two_s, delta);
        let point = ParamPoint::new(0.3, delta, td, dd).unwrap();
        let best = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(optimal_angle(&point).unwrap())).unwrap().f;
        let other = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(phi)).unwrap().f;
        prop_assert!(other <= best + 1e-9);
    }

    #[test]
    fn coefficients_even_in_delta_on_symmetric_axes(two_s in 1u32..=10, delta in 0.0f64..8.0, perp in any::<bool>()) {
        let phi = if perp { FRAC_PI_2 } else { 0.0 };
        let spin = Spin::from_two_s(two_s).unwrap();
        let eval = |d: f64| {
            let st = thermal_state(spin.length(), d).unwrap();
            cfi(&spin, &st, &ParamPoint::new(0.0, d, 1.0, 1.0).unwrap(), &MeasurementAxis::in_plane(phi)).unwrap()
        };
        let (a, b) = (eval(delta), eval(-delta));
        for (x, y) in [(a.a_tt, b.a_tt), (a.a_dd, b.a_dd), (a.a_dt, b.a_dt)] {
            prop_assert!((x - y).abs() < 1e-10 * x.abs().max(1.0));
        }
    }

    #[test]
    fn cfi_is_pi_periodic(two_s in 1u32..=10, delta in -6.0f64..6.0, phi in -PI..PI) {
        let (spin, st) = setup(two_s, delta);
        let point = ParamPoint::new(0.5, delta, 1.0, 0.6).unwrap();
        let a = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(phi)).unwrap();
        let b = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(phi + PI)).unwrap();
        prop_assert!((a.f - b.f).abs() < 1e-10 * a.f.max(1.0));
    }

    #[test]
    fn decomposition_reassembles(two_s in 1u32..=10, delta in -6.0f64..6.0, phi in -PI..PI, td in -2.0f64..2.0, dd in -2.0f64..2.0) {
        let (spin, st) = setup(two_s, delta);
        let point = ParamPoint::new(0.5, delta, td, dd).unwrap();
        let r = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(phi)).unwrap();
        let f = r.a_tt * td * td + r.a_dd * dd * dd + 2.0 * r.a_dt * td * dd;
        prop_assert!((f - r.f).abs() <= 1e-11 * r.f.abs().max(1e-3));
    }
}
