//! Grid sweeps behind the two figure commands.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use thermospin::{cfi, qfi, thermal_state, MeasurementAxis, ParamPoint, Spin, SpinLength};

use crate::error::{CliError, CliResult};
use crate::format::{fmt12, sig12};
use crate::grid::Grid;
use crate::OutputFormat;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Figure1Row {
    pub delta: f64,
    #[serde(rename = "twoS")]
    pub two_s: u32,
    #[serde(rename = "hC_norm")]
    pub h_c_norm: f64,
    #[serde(rename = "hQ_norm")]
    pub h_q_norm: f64,
}

/// `h_C / S(S+1)` and `h_Q / 2S` for each spin length (outer) and `δ` (inner).
pub fn figure1(two_s: &[u32], delta: &Grid) -> CliResult<Vec<Figure1Row>> {
    if two_s.is_empty() {
        return Err(CliError::Usage("figure1 needs at least one --twoS value".into()));
    }
    let lengths = two_s
        .iter()
        .map(|&t| SpinLength::new(t))
        .collect::<Result<Vec<_>, _>>()?;
    let deltas = delta.points();
    let jobs: Vec<(SpinLength, f64)> = lengths
        .iter()
        .flat_map(|&s| deltas.iter().map(move |&d| (s, d)))
        .collect();
    jobs.par_iter()
        .map(|&(s, d)| {
            let st = thermal_state(s, d)?;
            let q = qfi(&st, &ParamPoint::new(0.0, d, 1.0, 1.0)?)?;
            Ok(Figure1Row {
                delta: sig12(d),
                two_s: s.two_s(),
                h_c_norm: sig12(q.h_c_norm),
                h_q_norm: sig12(q.h_q_norm),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Figure2Row {
    pub delta: f64,
    pub phi: f64,
    #[serde(rename = "A_tt_norm")]
    pub a_tt_norm: f64,
    #[serde(rename = "A_dd_norm")]
    pub a_dd_norm: f64,
    #[serde(rename = "F_over_H")]
    pub f_over_h: f64,
}

/// `A_θθ / 2S`, `A_δδ / [S(S+1)/3]` and `F / H` over `δ` (outer) and `φ` (inner).
pub fn figure2(
    two_s: u32,
    delta: &Grid,
    phi: &Grid,
    theta_dot: f64,
    delta_dot: f64,
) -> CliResult<Vec<Figure2Row>> {
    let spin = Spin::from_two_s(two_s)?;
    let s = spin.length();
    ParamPoint::new(0.0, 0.0, theta_dot, delta_dot)?.require_identifiable()?;
    let phis = phi.points();
    let rows: CliResult<Vec<Vec<Figure2Row>>> = delta
        .points()
        .par_iter()
        .map(|&d| {
            let st = thermal_state(s, d)?;
            let point = ParamPoint::new(0.0, d, theta_dot, delta_dot)?;
            let h = qfi(&st, &point)?.h;
            phis.iter()
                .map(|&p| {
                    let r = cfi(&spin, &st, &point, &MeasurementAxis::in_plane(p))?;
                    Ok(Figure2Row {
                        delta: sig12(d),
                        phi: sig12(p),
                        a_tt_norm: sig12(r.a_tt / (2.0 * s.value())),
                        a_dd_norm: sig12(r.a_dd / (s.casimir() / 3.0)),
                        f_over_h: sig12(r.f / h),
                    })
                })
                .collect()
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

pub trait CsvRow: Serialize {
    const COLUMNS: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

impl CsvRow for Figure1Row {
    const COLUMNS: &'static [&'static str] = &["delta", "twoS", "hC_norm", "hQ_norm"];

    fn cells(&self) -> Vec<String> {
        vec![
            fmt12(self.delta),
            self.two_s.to_string(),
            fmt12(self.h_c_norm),
            fmt12(self.h_q_norm),
        ]
    }
}

impl CsvRow for Figure2Row {
    const COLUMNS: &'static [&'static str] = &["delta", "phi", "A_tt_norm", "A_dd_norm", "F_over_H"];

    fn cells(&self) -> Vec<String> {
        [self.delta, self.phi, self.a_tt_norm, self.a_dd_norm, self.f_over_h]
            .iter()
            .map(|&x| fmt12(x))
            .collect()
    }
}

pub const FIGURE1_NOTES: &[&str] = &[
    "delta: Zeeman splitting over k_B T (dimensionless)",
    "twoS: twice the spin length",
    "hC_norm: intensity coefficient h_C = Var(S_Z) divided by S(S+1)",
    "hQ_norm: orientation coefficient h_Q = 4<S_X^2> tanh^2(delta/2) divided by 2S",
];

pub fn figure2_notes(two_s: u32, theta_dot: f64, delta_dot: f64) -> Vec<String> {
    vec![
        format!("twoS = {two_s}, theta_dot = {theta_dot}, delta_dot = {delta_dot}"),
        "delta: Zeeman splitting over k_B T (dimensionless)".into(),
        "phi: angle of the measured axis from the field axis, radians".into(),
        "A_tt_norm: A_thetatheta divided by 2S".into(),
        "A_dd_norm: A_deltadelta divided by S(S+1)/3".into(),
        "F_over_H: classical over quantum Fisher information".into(),
    ]
}

pub fn write_rows<R: CsvRow>(
    out: &mut dyn Write,
    rows: &[R],
    notes: &[String],
    format: OutputFormat,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            for note in notes {
                writeln!(out, "# {note}")?;
            }
            writeln!(out, "{}", R::COLUMNS.join(","))?;
            for row in rows {
                writeln!(out, "{}", row.cells().join(","))?;
            }
        }
        OutputFormat::Json => {
            for row in rows {
                let line = serde_json::to_string(row).map_err(std::io::Error::other)?;
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}
