use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fisher_classical::{cfi, MeasurementAxis};
use crate::fisher_quantum::qfi;
use crate::spin_algebra::Spin;
use crate::thermal::{ParamPoint, ThermalSpinState};

/// Quantum and classical Fisher information at one parameter point for one
/// measurement axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherReport {
    #[serde(rename = "twoS")]
    pub two_s: u32,
    pub theta: f64,
    pub delta: f64,
    pub theta_dot: f64,
    pub delta_dot: f64,
    pub phi: f64,
    pub gamma: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "hC")]
    pub h_c: f64,
    #[serde(rename = "hQ")]
    pub h_q: f64,
    #[serde(rename = "hC_norm")]
    pub h_c_norm: f64,
    #[serde(rename = "hQ_norm")]
    pub h_q_norm: f64,
    pub phi_opt: Option<f64>,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "A_tt")]
    pub a_tt: f64,
    #[serde(rename = "A_dd")]
    pub a_dd: f64,
    #[serde(rename = "A_dt")]
    pub a_dt: f64,
    #[serde(rename = "P")]
    pub p: Option<f64>,
}

pub fn fisher_report(
    spin: &Spin,
    state: &ThermalSpinState,
    point: &ParamPoint,
    axis: &MeasurementAxis,
) -> Result<FisherReport> {
    let q = qfi(state, point)?;
    let c = cfi(spin, state, point, axis)?;
    Ok(FisherReport {
        two_s: spin.length().two_s(),
        theta: point.theta,
        delta: point.delta,
        theta_dot: point.theta_dot,
        delta_dot: point.delta_dot,
        phi: axis.phi,
        gamma: axis.gamma,
        h: q.h,
        h_c: q.h_c,
        h_q: q.h_q,
        h_c_norm: q.h_c_norm,
        h_q_norm: q.h_q_norm,
        phi_opt: q.phi_opt,
        f: c.f,
        a_tt: c.a_tt,
        a_dd: c.a_dd,
        a_dt: c.a_dt,
        p: c.p,
    })
}
