//! Outcome statistics of a spin-projection measurement and the resulting
//! classical Fisher information, its `A_ηχ` decomposition, and the precision
//! of an ensemble (mean-value) measurement.
//!
//! The measured axis `n_O` is fixed in the lab frame while the field axis
//! `n_Z(θ)` moves with the parameter. `φ` is the in-plane angle from `n_Z`
//! towards `n_X = ∂θ n_Z` at the true parameter value, and `γ` tilts `n_O`
//! out of the xz plane towards `y`:
//!
//! ```text
//! n_O = cos γ (sin(θ+φ), 0, cos(θ+φ)) + sin γ (0, 1, 0)
//! ```

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::spin_algebra::{to_complex, AxisVector, Spin, SpinLength};
use crate::thermal::{ParamPoint, ThermalSpinState};

/// Outcome probabilities below this are candidates for dropping from the CFI sum.
pub const P_FLOOR: f64 = 1e-14;
/// A sub-floor outcome is dropped only if both derivatives are below this.
pub const DP_NEGLIGIBLE: f64 = 1e-10;

/// Direction of the measured spin projection `S_O = n_O·S`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementAxis {
    /// In-plane offset from the field axis.
    pub phi: f64,
    /// Out-of-plane tilt; zero keeps `n_O` in the xz plane.
    pub gamma: f64,
}

impl MeasurementAxis {
    pub fn in_plane(phi: f64) -> Self {
        Self { phi, gamma: 0.0 }
    }

    pub fn new(phi: f64, gamma: f64) -> Result<Self> {
        Ok(Self {
            phi: ensure_finite(phi, "phi")?,
            gamma: ensure_finite(gamma, "gamma")?,
        })
    }

    /// Lab-frame direction when the field sits at polar angle `theta`.
    pub fn lab_vector(&self, theta: f64) -> AxisVector {
        let (sg, cg) = self.gamma.sin_cos();
        let (sa, ca) = (theta + self.phi).sin_cos();
        AxisVector {
            x: cg * sa,
            y: sg,
            z: cg * ca,
        }
    }
}

/// Squared overlaps `|⟨M_O|M_Z⟩|²` and their `θ`-derivatives for one axis.
///
/// Rows are outcomes `M_O = S..-S`, columns field levels `M_Z = S..-S`.
/// For an in-plane axis the table only depends on `φ` and can be reused for
/// every `θ` and `δ`.
#[derive(Debug, Clone)]
pub struct OverlapTable {
    overlaps: DMatrix<f64>,
    d_theta: DMatrix<f64>,
}

impl OverlapTable {
    pub fn new(spin: &Spin, theta: f64, axis: &MeasurementAxis) -> Self {
        if axis.gamma == 0.0 {
            Self::in_plane(spin, axis.phi)
        } else {
            Self::general(spin, theta, axis)
        }
    }

    /// `⟨M_O|M_Z⟩ = d(φ)[M_Z, M_O]`; moving the field by `dθ` shifts the
    /// relative angle by `-dθ`.
    pub fn in_plane(spin: &Spin, phi: f64) -> Self {
        let d = spin.rotation_y(phi);
        let dd = spin.y_generator() * &d;
        let n = spin.dim();
        let overlaps = DMatrix::from_fn(n, n, |k, m| d[(m, k)] * d[(m, k)]);
        let d_theta = DMatrix::from_fn(n, n, |k, m| -2.0 * d[(m, k)] * dd[(m, k)]);
        Self { overlaps, d_theta }
    }

    /// Full two-angle frame of the lab axis, `W = V† U(θ)`.
    pub fn general(spin: &Spin, theta: f64, axis: &MeasurementAxis) -> Self {
        let v = spin.axis_frame(&axis.lab_vector(theta));
        let u = to_complex(&spin.rotation_y(theta));
        let w = v.adjoint() * &u;
        let dw = v.adjoint() * to_complex(spin.y_generator()) * &u;
        let n = spin.dim();
        let overlaps = DMatrix::from_fn(n, n, |k, m| w[(k, m)].norm_sqr());
        let d_theta = DMatrix::from_fn(n, n, |k, m| {
            2.0 * (w[(k, m)].conj() * dw[(k, m)]).re
        });
        Self { overlaps, d_theta }
    }

    pub fn probabilities(&self, state: &ThermalSpinState) -> Vec<f64> {
        mat_vec(&self.overlaps, state.populations())
    }

    /// `(∂p/∂θ, ∂p/∂δ)`.
    pub fn derivatives(&self, state: &ThermalSpinState) -> (Vec<f64>, Vec<f64>) {
        (
            mat_vec(&self.d_theta, state.populations()),
            mat_vec(&self.overlaps, &state.population_derivatives()),
        )
    }

    pub fn cfi(&self, state: &ThermalSpinState, point: &ParamPoint) -> Result<CfiReport> {
        state.check_point(point)?;
        let p = self.probabilities(state);
        let (dt, dd) = self.derivatives(state);
        let (mut a_tt, mut a_dd, mut a_dt) = (0.0, 0.0, 0.0);
        for k in 0..p.len() {
            if p[k] < P_FLOOR {
                let dp = dt[k].abs().max(dd[k].abs());
                if dp < DP_NEGLIGIBLE {
                    continue;
                }
                return Err(Error::OutcomeFloor {
                    outcome: k,
                    probability: p[k],
                    derivative: dp,
                });
            }
            a_tt += dt[k] * dt[k] / p[k];
            a_dd += dd[k] * dd[k] / p[k];
            a_dt += dt[k] * dd[k] / p[k];
        }
        let f = a_tt * point.theta_dot.powi(2)
            + a_dd * point.delta_dot.powi(2)
            + 2.0 * a_dt * point.theta_dot * point.delta_dot;
        Ok(CfiReport {
            f,
            a_tt,
            a_dd,
            a_dt,
            p: None,
        })
    }
}

fn mat_vec(m: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (0..m.nrows())
        .map(|k| (0..m.ncols()).map(|j| m[(k, j)] * v[j]).sum())
        .collect()
}

/// Classical Fisher information of one spin projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CfiReport {
    pub f: f64,
    pub a_tt: f64,
    pub a_dd: f64,
    pub a_dt: f64,
    /// Ensemble precision; `None` when the measured projection has zero variance.
    pub p: Option<f64>,
}

/// `p_{M_O}` for outcomes `M_O = S..-S`.
pub fn outcome_probabilities(
    spin: &Spin,
    state: &ThermalSpinState,
    theta: f64,
    axis: &MeasurementAxis,
) -> Vec<f64> {
    OverlapTable::new(spin, theta, axis).probabilities(state)
}

/// `(∂p/∂θ, ∂p/∂δ)` with the measurement axis held fixed in the lab.
pub fn probability_derivatives(
    spin: &Spin,
    state: &ThermalSpinState,
    theta: f64,
    axis: &MeasurementAxis,
) -> (Vec<f64>, Vec<f64>) {
    OverlapTable::new(spin, theta, axis).derivatives(state)
}

/// Classical Fisher information `Σ (∂λ p)² / p` with its decomposition and
/// the ensemble precision of the same axis.
pub fn cfi(
    spin: &Spin,
    state: &ThermalSpinState,
    point: &ParamPoint,
    axis: &MeasurementAxis,
) -> Result<CfiReport> {
    let mut report = OverlapTable::new(spin, point.theta, axis).cfi(state, point)?;
    report.p = ensemble_precision(state, point, axis).ok();
    Ok(report)
}

/// CFI of the eigenstate `|M_Z⟩` measured along `n_O`:
/// `(n_O·n_X)² / [(n_O·n_X)² + (n_O·n_Y)²] · 2 [S(S+1) - M_Z²] θ̇²`.
pub fn pure_state_cfi(
    s: SpinLength,
    two_m: i32,
    theta_dot: f64,
    axis_lab: &AxisVector,
    n_x: &AxisVector,
    n_y: &AxisVector,
) -> Result<f64> {
    s.index_of(two_m)?;
    for v in [axis_lab, n_x, n_y] {
        AxisVector::new(v.x, v.y, v.z)?;
    }
    let ox = axis_lab.dot(n_x).powi(2);
    let oy = axis_lab.dot(n_y).powi(2);
    if ox + oy < 1e-24 {
        return Err(Error::DegenerateAxis);
    }
    let m = f64::from(two_m) / 2.0;
    Ok(ox / (ox + oy) * 2.0 * (s.casimir() - m * m) * theta_dot * theta_dot)
}

/// Mean-value precision `|∂λ⟨S_O⟩|² / Var(S_O)`.
///
/// For an in-plane axis this is
/// `[θ̇⟨S_Z⟩ sin φ - δ̇ cos φ Var(S_Z)]² / [⟨S_X²⟩ sin² φ + Var(S_Z) cos² φ]`;
/// an out-of-plane tilt scales the signal by `cos² γ` and adds
/// `sin² γ ⟨S_Y²⟩ = sin² γ ⟨S_X²⟩` to the variance.
pub fn ensemble_precision(
    state: &ThermalSpinState,
    point: &ParamPoint,
    axis: &MeasurementAxis,
) -> Result<f64> {
    state.check_point(point)?;
    let (sp, cp) = axis.phi.sin_cos();
    let (sg, cg) = axis.gamma.sin_cos();
    let var = state.var_sz();
    let sx2 = state.mean_sx2();
    let signal = cg * (point.theta_dot * state.mean_sz() * sp - point.delta_dot * cp * var);
    let variance = cg * cg * (sx2 * sp * sp + var * cp * cp) + sg * sg * sx2;
    if !(variance > f64::MIN_POSITIVE) {
        return Err(Error::ZeroVariance);
    }
    Ok(signal * signal / variance)
}

/// Two-level closed form,
/// `{2θ̇ sin φ t + δ̇ cos φ (1 - t²)}² / (4 {sin² φ + cos² φ (1 - t²)})` with `t = tanh(δ/2)`.
pub fn qubit_closed_form(point: &ParamPoint, phi: f64) -> f64 {
    let t = (0.5 * point.delta).tanh();
    let (sp, cp) = phi.sin_cos();
    let num = 2.0 * point.theta_dot * sp * t + point.delta_dot * cp * (1.0 - t * t);
    num * num / (4.0 * (sp * sp + cp * cp * (1.0 - t * t)))
}

/// `n_X = ∂θ n_Z` and `n_Y = ŷ` at polar angle `theta`.
pub fn transverse_axes(theta: f64) -> (AxisVector, AxisVector) {
    let (s, c) = theta.sin_cos();
    (
        AxisVector {
            x: c,
            y: 0.0,
            z: -s,
        },
        AxisVector::y_hat(),
    )
}
