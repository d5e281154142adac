//! Randomized comparison of the closed forms against the brute-force oracle.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thermospin::oracle::{
    cfi_oracle, default_step, gibbs_matrix, rho_derivative_fd, sld_lyapunov, sld_residual,
    OraclePoint,
};
use thermospin::{
    cfi, qfi, sld_operator, thermal_state, MeasurementAxis, ParamPoint, Spin, ThermalSpinState,
};

use crate::error::{CliError, CliResult};
use crate::format::{fmt12, round_json};

/// How the axis under test is chosen; the library's rule is [`thermospin::optimal_angle`].
pub type AngleRule = fn(&ParamPoint) -> thermospin::Result<f64>;

pub const PHI_SCAN: usize = 720;

/// One random draw: `2S ≤ 12`, `δ ∈ [-5, 5]`, `θ ∈ [0, π]`, rates in `[-2, 2]`,
/// plus a random measurement axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Instance {
    #[serde(rename = "twoS")]
    pub two_s: u32,
    pub theta: f64,
    pub delta: f64,
    pub theta_dot: f64,
    pub delta_dot: f64,
    pub phi: f64,
    pub gamma: f64,
}

pub fn draw_instances(trials: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| Instance {
            two_s: rng.random_range(1..=12),
            theta: rng.random_range(0.0..=PI),
            delta: rng.random_range(-5.0..=5.0),
            theta_dot: rng.random_range(-2.0..=2.0),
            delta_dot: rng.random_range(-2.0..=2.0),
            phi: rng.random_range(-FRAC_PI_2..FRAC_PI_2),
            gamma: rng.random_range(-1.0..1.0),
        })
        .collect()
}

struct Prepared {
    spin: Spin,
    state: ThermalSpinState,
    point: ParamPoint,
    oracle: OraclePoint,
}

fn prepare(inst: &Instance) -> thermospin::Result<Prepared> {
    let spin = Spin::from_two_s(inst.two_s)?;
    let state = thermal_state(spin.length(), inst.delta)?;
    let point = ParamPoint::new(inst.theta, inst.delta, inst.theta_dot, inst.delta_dot)?;
    let oracle = OraclePoint {
        theta: inst.theta,
        delta: inst.delta,
        theta_dot: inst.theta_dot,
        delta_dot: inst.delta_dot,
    };
    Ok(Prepared { spin, state, point, oracle })
}

fn rel(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

/// Outcome of one check on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub deviation: f64,
    pub value: f64,
    pub reference: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    QfiOracle,
    SldResidual,
    CfiOracle,
    PhiOptSaturation,
    PhiOptScan,
    Chain,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::QfiOracle,
        Check::SldResidual,
        Check::CfiOracle,
        Check::PhiOptSaturation,
        Check::PhiOptScan,
        Check::Chain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::QfiOracle => "qfi_vs_oracle",
            Check::SldResidual => "sld_residual",
            Check::CfiOracle => "cfi_vs_oracle",
            Check::PhiOptSaturation => "phi_opt_saturation",
            Check::PhiOptScan => "phi_opt_scan",
            Check::Chain => "p_f_h_chain",
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Check::QfiOracle => 1e-8,
            Check::SldResidual => 1e-9,
            Check::CfiOracle => 1e-6,
            Check::PhiOptSaturation => 1e-8,
            Check::PhiOptScan => 1e-9,
            Check::Chain => 1e-9,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Check::QfiOracle => "relative |H - Tr(rho L^2)|, L from the Lyapunov solve",
            Check::SldResidual => "max |drho - (L rho + rho L)/2| for the closed-form L",
            Check::CfiOracle => "relative |F - F_oracle| at the random axis",
            Check::PhiOptSaturation => "relative |F(phi_opt) - H|",
            Check::PhiOptScan => "max over the phi scan of F(phi) - F(phi_opt)",
            Check::Chain => "max(P - F, F - H) at the random axis",
        }
    }

    pub fn run(self, inst: &Instance, rule: AngleRule) -> thermospin::Result<Sample> {
        let p = prepare(inst)?;
        let m = p.spin.matrices();
        let step = default_step(inst.delta);
        let sample = |value: f64, reference: f64, deviation: f64| Sample { deviation, value, reference };
        Ok(match self {
            Check::QfiOracle => {
                let h = qfi(&p.state, &p.point)?.h;
                let rho = gibbs_matrix(m, inst.theta, inst.delta);
                let l = sld_lyapunov(&rho, &rho_derivative_fd(m, &p.oracle, step));
                let h_oracle = (&rho * &l * &l).trace().re;
                sample(h, h_oracle, rel(h, h_oracle))
            }
            Check::SldResidual => {
                let rho = gibbs_matrix(m, inst.theta, inst.delta);
                let drho = rho_derivative_fd(m, &p.oracle, step);
                let l = sld_operator(&p.spin, &p.state, &p.point)?;
                let r = sld_residual(&rho, &drho, &l);
                sample(r, 0.0, r)
            }
            Check::CfiOracle => {
                let axis = MeasurementAxis::new(inst.phi, inst.gamma)?;
                let f = cfi(&p.spin, &p.state, &p.point, &axis)?.f;
                let f_oracle = cfi_oracle(m, &p.oracle, &axis.lab_vector(inst.theta), step)?;
                sample(f, f_oracle, rel(f, f_oracle))
            }
            Check::PhiOptSaturation => {
                let h = qfi(&p.state, &p.point)?.h;
                let axis = MeasurementAxis::in_plane(rule(&p.point)?);
                let f = cfi(&p.spin, &p.state, &p.point, &axis)?.f;
                sample(f, h, rel(f, h))
            }
            Check::PhiOptScan => {
                let best = cfi(&p.spin, &p.state, &p.point, &MeasurementAxis::in_plane(rule(&p.point)?))?.f;
                let mut top = f64::NEG_INFINITY;
                for k in 0..PHI_SCAN {
                    let phi = -FRAC_PI_2 + PI * k as f64 / PHI_SCAN as f64;
                    top = top.max(cfi(&p.spin, &p.state, &p.point, &MeasurementAxis::in_plane(phi))?.f);
                }
                sample(top, best, top - best)
            }
            Check::Chain => {
                let h = qfi(&p.state, &p.point)?.h;
                let r = cfi(&p.spin, &p.state, &p.point, &MeasurementAxis::new(inst.phi, inst.gamma)?)?;
                let excess = (r.p.unwrap_or(0.0) - r.f).max(r.f - h);
                sample(r.f, h, excess)
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckSummary {
    pub check: Check,
    pub trials: usize,
    pub worst: Sample,
    pub worst_instance: Instance,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.worst.deviation <= self.check.tolerance()
    }

    pub fn failure_record(&self) -> serde_json::Value {
        round_json(json!({
            "check": self.check.name(),
            "tolerance": self.check.tolerance(),
            "deviation": self.worst.deviation,
            "value": self.worst.value,
            "reference": self.worst.reference,
            "instance": self.worst_instance,
        }))
    }
}

/// Worst case of `check` over `instances`; ties go to the earliest instance.
pub fn run_check(check: Check, instances: &[Instance], rule: AngleRule) -> CliResult<CheckSummary> {
    if instances.is_empty() {
        return Err(CliError::Usage("verify needs at least one trial".into()));
    }
    let samples = instances
        .par_iter()
        .map(|inst| check.run(inst, rule))
        .collect::<thermospin::Result<Vec<Sample>>>()?;
    let mut worst = 0;
    for (i, s) in samples.iter().enumerate() {
        // NaN deviations count as failures.
        if !(s.deviation <= samples[worst].deviation) {
            worst = i;
        }
    }
    Ok(CheckSummary {
        check,
        trials: instances.len(),
        worst: samples[worst],
        worst_instance: instances[worst],
    })
}

pub fn run_all(trials: usize, seed: u64, rule: AngleRule) -> CliResult<Vec<CheckSummary>> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let instances = draw_instances(trials, seed);
    Check::ALL
        .iter()
        .map(|&c| run_check(c, &instances, rule))
        .collect()
}

/// Print the table and, for failing checks, one JSON line with the worst instance.
pub fn write_report(out: &mut dyn Write, summaries: &[CheckSummary], seed: u64) -> std::io::Result<bool> {
    let trials = summaries.first().map_or(0, |s| s.trials);
    writeln!(out, "# verify: {trials} random instances, seed {seed}")?;
    for s in summaries {
        writeln!(out, "# {}: {}", s.check.name(), s.check.describe())?;
    }
    writeln!(out, "check,worst,tolerance,status")?;
    let mut ok = true;
    for s in summaries {
        let status = if s.passed() { "ok" } else { "FAIL" };
        ok &= s.passed();
        writeln!(
            out,
            "{},{},{},{}",
            s.check.name(),
            fmt12(s.worst.deviation),
            fmt12(s.check.tolerance()),
            status
        )?;
    }
    for s in summaries.iter().filter(|s| !s.passed()) {
        writeln!(out, "{}", s.failure_record())?;
    }
    Ok(ok)
}
