//! Symmetric logarithmic derivative, quantum Fisher information and the
//! optimal measurement direction for the thermal spin.
//!
//! With `t = tanh(δ/2)` the SLD is
//!
//! ```text
//! L = δ̇ (⟨S_Z⟩ - S_Z) - 2 θ̇ t S_X
//! ```
//!
//! where `S_X = n_X·S` and `n_X = ∂θ n_Z`. The QFI splits as
//! `H = h_C δ̇² + h_Q θ̇²` with `h_C = Var(S_Z)` and `h_Q = 4⟨S_X²⟩ t²`.
//! The optimal observable is the spin projection along the direction of the
//! operator part of `L`, at angle `φ_opt` from the field axis towards `n_X`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::spin_algebra::{Operator, Spin, SpinLength};
use crate::thermal::{field_axes, ParamPoint, ThermalSpinState};

/// QFI and its intensity/orientation split at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QfiReport {
    /// Total quantum Fisher information `H`.
    pub h: f64,
    /// Coefficient of `δ̇²` (longitudinal fluctuations).
    pub h_c: f64,
    /// Coefficient of `θ̇²` (transverse fluctuations).
    pub h_q: f64,
    /// `h_C / [S(S+1)]`.
    pub h_c_norm: f64,
    /// `h_Q / (2S)`.
    pub h_q_norm: f64,
    /// Optimal measurement angle; `None` when both derivatives vanish.
    pub phi_opt: Option<f64>,
}

/// The SLD in the lab frame.
pub fn sld_operator(spin: &Spin, state: &ThermalSpinState, point: &ParamPoint) -> Result<Operator> {
    state.check_point(point)?;
    let d = spin.dim();
    let (s_z, s_x) = field_axes(spin, point.theta);
    let t = (0.5 * point.delta).tanh();
    let c = |v: f64| Complex64::new(v, 0.0);
    let shift = Operator::identity(d, d) * c(point.delta_dot * state.mean_sz());
    Ok(shift - s_z * c(point.delta_dot) - s_x * c(2.0 * point.theta_dot * t))
}

pub fn qfi(state: &ThermalSpinState, point: &ParamPoint) -> Result<QfiReport> {
    state.check_point(point)?;
    let s = state.spin_length();
    let t = (0.5 * point.delta).tanh();
    let h_c = state.var_sz();
    let h_q = 4.0 * state.mean_sx2() * t * t;
    let h = h_c * point.delta_dot.powi(2) + h_q * point.theta_dot.powi(2);
    Ok(QfiReport {
        h,
        h_c,
        h_q,
        h_c_norm: h_c / s.casimir(),
        h_q_norm: h_q / (2.0 * s.value()),
        phi_opt: optimal_angle(point).ok(),
    })
}

/// Fold an axis angle into `(-π/2, π/2]`; `S_O` and `-S_O` carry the same information.
pub fn fold_axis_angle(phi: f64) -> f64 {
    use std::f64::consts::{FRAC_PI_2, PI};
    let mut folded = phi.rem_euclid(PI);
    if folded > FRAC_PI_2 {
        folded -= PI;
    }
    folded
}

/// Optimal measurement angle, `tan φ_opt = 2 θ̇ tanh(δ/2) / δ̇`, folded into
/// `(-π/2, π/2]`. Independent of the spin length.
pub fn optimal_angle(point: &ParamPoint) -> Result<f64> {
    point.require_identifiable()?;
    let t = (0.5 * point.delta).tanh();
    Ok(fold_axis_angle(
        (2.0 * point.theta_dot * t).atan2(point.delta_dot),
    ))
}

/// QFI of the pure eigenstate `|M_Z⟩`: `2 θ̇² [S(S+1) - M_Z²]`.
pub fn pure_state_qfi(s: SpinLength, two_m: i32, theta_dot: f64) -> Result<f64> {
    s.index_of(two_m)?;
    let m = f64::from(two_m) / 2.0;
    Ok(2.0 * theta_dot * theta_dot * (s.casimir() - m * m))
}

/// `Tr(ρ L²)` evaluated with explicit matrices; used to cross-check [`qfi`].
pub fn qfi_from_sld(rho: &Operator, sld: &Operator) -> f64 {
    (rho * sld * sld).trace().re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::thermal::{density_matrix, thermal_state};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn s(two_s: u32) -> SpinLength {
        SpinLength::new(two_s).unwrap()
    }

    #[test]
    fn sld_vanishes_without_derivatives() {
        let spin = Spin::new(s(3));
        let st = thermal_state(s(3), 0.7).unwrap();
        let p = ParamPoint::new(0.4, 0.7, 0.0, 0.0).unwrap();
        let l = sld_operator(&spin, &st, &p).unwrap();
        assert!(l.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn sld_intensity_only_is_diagonal_in_field_frame() {
        let spin = Spin::new(s(4));
        let st = thermal_state(s(4), 1.1).unwrap();
        let p = ParamPoint::new(0.0, 1.1, 0.0, 0.8).unwrap();
        let l = sld_operator(&spin, &st, &p).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == j {
                    0.8 * (st.mean_sz() - s(4).projection(i))
                } else {
                    0.0
                };
                assert!((l[(i, j)].re - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn sld_has_zero_mean() {
        let spin = Spin::new(s(5));
        let st = thermal_state(s(5), -0.9).unwrap();
        let p = ParamPoint::new(1.3, -0.9, 0.6, -1.7).unwrap();
        let l = sld_operator(&spin, &st, &p).unwrap();
        let rho = density_matrix(&spin, &st, p.theta);
        assert!((&rho * &l).trace().norm() < 1e-11);
    }

    #[test]
    fn delta_mismatch_is_rejected() {
        let spin = Spin::new(s(1));
        let st = thermal_state(s(1), 1.0).unwrap();
        let p = ParamPoint::new(0.0, 2.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            sld_operator(&spin, &st, &p),
            Err(Error::DeltaMismatch { .. })
        ));
        assert!(qfi(&st, &p).is_err());
    }

    #[test]
    fn infinite_temperature_split() {
        for two_s in [1, 2, 3, 4, 10, 20] {
            let sl = s(two_s);
            let st = thermal_state(sl, 0.0).unwrap();
            let r = qfi(&st, &ParamPoint::new(0.0, 0.0, 1.0, 1.0).unwrap()).unwrap();
            assert!((r.h_c - sl.casimir() / 3.0).abs() < 1e-12 * sl.casimir());
            assert_eq!(r.h_q, 0.0);
            assert!((r.h_c_norm - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn low_temperature_orientation_term() {
        for two_s in [1, 2, 3, 4, 10, 20] {
            let sl = s(two_s);
            let st = thermal_state(sl, 40.0).unwrap();
            let r = qfi(&st, &ParamPoint::new(0.0, 40.0, 1.0, 0.0).unwrap()).unwrap();
            assert!((r.h_q - 2.0 * sl.value()).abs() < 1e-6 * 2.0 * sl.value());
            assert!((r.h_q_norm - 1.0).abs() < 1e-6);
            assert_eq!(r.h, r.h_q);
        }
    }

    #[test]
    fn optimal_angle_limits() {
        let p = ParamPoint::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(optimal_angle(&p).unwrap(), 0.0);
        let p = ParamPoint::new(0.0, 1.0, 1.0, 0.0).unwrap();
        assert!((optimal_angle(&p).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let p = ParamPoint::new(0.0, 1.0, -1.0, 0.0).unwrap();
        assert!((optimal_angle(&p).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let p = ParamPoint::new(0.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(optimal_angle(&p), Err(Error::Unidentifiable));
    }

    #[test]
    fn optimal_angle_unit_derivatives() {
        let p = ParamPoint::new(0.2, 1.0, 1.0, 1.0).unwrap();
        let phi = optimal_angle(&p).unwrap();
        assert!((phi - (2.0 * 0.5f64.tanh()).atan()).abs() < 1e-15);
        assert!((phi - 0.7461).abs() < 1e-4);
    }

    #[test]
    fn fold_maps_into_half_open_interval() {
        assert!((fold_axis_angle(PI) - 0.0).abs() < 1e-15);
        assert!((fold_axis_angle(-FRAC_PI_2) - FRAC_PI_2).abs() < 1e-15);
        assert!((fold_axis_angle(2.0) - (2.0 - PI)).abs() < 1e-15);
        assert!((fold_axis_angle(-2.0) - (PI - 2.0)).abs() < 1e-15);
    }

    #[test]
    fn pure_state_values() {
        assert_eq!(pure_state_qfi(s(10), 10, 1.0).unwrap(), 10.0);
        assert_eq!(pure_state_qfi(s(10), -10, 1.0).unwrap(), 10.0);
        assert_eq!(pure_state_qfi(s(10), 0, 1.0).unwrap(), 60.0);
        assert!(pure_state_qfi(s(10), 1, 1.0).is_err());
        assert!(pure_state_qfi(s(3), 5, 1.0).is_err());
    }

    #[test]
    fn pure_state_matches_cold_thermal_state() {
        let sl = s(10);
        let st = thermal_state(sl, 1e3).unwrap();
        let r = qfi(&st, &ParamPoint::new(0.0, 1e3, 1.0, 0.0).unwrap()).unwrap();
        assert!((r.h - pure_state_qfi(sl, -10, 1.0).unwrap()).abs() < 1e-6);
    }
}
