use std::io::Write;

use thermospin::{fisher_report, thermal_state, FisherReport, MeasurementAxis, ParamPoint, Spin};

use crate::error::{CliError, CliResult};
use crate::format::{fmt12, round_json};
use crate::OutputFormat;

/// Inputs of the `point` command, angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointQuery {
    pub two_s: u32,
    pub delta: f64,
    pub theta: f64,
    pub theta_dot: f64,
    pub delta_dot: f64,
    /// `None` selects the optimal axis.
    pub phi: Option<f64>,
    pub gamma: f64,
}

pub fn evaluate(q: &PointQuery) -> CliResult<FisherReport> {
    let spin = Spin::from_two_s(q.two_s)?;
    let state = thermal_state(spin.length(), q.delta)?;
    let point = ParamPoint::new(q.theta, q.delta, q.theta_dot, q.delta_dot)?;
    let phi = match q.phi {
        Some(phi) => phi,
        None => thermospin::optimal_angle(&point).map_err(|_| {
            CliError::Usage("--phi opt needs a nonzero --thetadot or --deltadot".into())
        })?,
    };
    let axis = MeasurementAxis::new(phi, q.gamma)?;
    Ok(fisher_report(&spin, &state, &point, &axis)?)
}

pub fn write_report(out: &mut dyn Write, r: &FisherReport, format: OutputFormat) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            let v = round_json(serde_json::to_value(r).map_err(std::io::Error::other)?);
            writeln!(out, "{v}")
        }
        OutputFormat::Csv => {
            let opt = |x: Option<f64>| x.map_or_else(|| "none".to_string(), fmt12);
            let fields: [(&str, String); 18] = [
                ("twoS", r.two_s.to_string()),
                ("delta", fmt12(r.delta)),
                ("theta", fmt12(r.theta)),
                ("theta_dot", fmt12(r.theta_dot)),
                ("delta_dot", fmt12(r.delta_dot)),
                ("phi", fmt12(r.phi)),
                ("gamma", fmt12(r.gamma)),
                ("H", fmt12(r.h)),
                ("hC", fmt12(r.h_c)),
                ("hQ", fmt12(r.h_q)),
                ("hC_norm", fmt12(r.h_c_norm)),
                ("hQ_norm", fmt12(r.h_q_norm)),
                ("phi_opt", opt(r.phi_opt)),
                ("F", fmt12(r.f)),
                ("A_tt", fmt12(r.a_tt)),
                ("A_dd", fmt12(r.a_dd)),
                ("A_dt", fmt12(r.a_dt)),
                ("P", opt(r.p)),
            ];
            writeln!(out, "# angles in radians; H, F, P per unit lambda^2")?;
            writeln!(out, "quantity,value")?;
            for (k, v) in fields {
                writeln!(out, "{k},{v}")?;
            }
            Ok(())
        }
    }
}
