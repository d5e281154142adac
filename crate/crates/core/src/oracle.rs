//! Brute-force reference values for every Fisher quantity.
//!
//! Nothing here touches the closed-form modules: the Gibbs state comes from
//! a dense eigensolve of `cosθ S_z + sinθ S_x`, `∂λρ` from a finite-difference
//! stencil in `λ`, the SLD from the eigenbasis of `ρ`, and measurement
//! statistics from the eigenvectors of `n_O·S`. Only the spin matrices are
//! shared. Slow by construction.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::spin_algebra::{axis_projection, AxisVector, Operator, SpinMatrices};

/// Denominators `p_m + p_n` below this are treated as zero in the SLD solve.
pub const ORACLE_P_FLOOR: f64 = 1e-14;

/// Parameter point as seen by the oracle (kept separate from the library's type).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OraclePoint {
    pub theta: f64,
    pub delta: f64,
    pub theta_dot: f64,
    pub delta_dot: f64,
}

impl OraclePoint {
    fn shifted(&self, eps: f64) -> (f64, f64) {
        (
            self.theta + self.theta_dot * eps,
            self.delta + self.delta_dot * eps,
        )
    }
}

/// Default finite-difference step `1e-5 · max(1, |δ|)`.
pub fn default_step(delta: f64) -> f64 {
    1e-5 * delta.abs().max(1.0)
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// `exp(-δ H) / Z` for `H = cosθ S_z + sinθ S_x`, through a dense eigensolve.
pub fn gibbs_matrix(m: &SpinMatrices, theta: f64, delta: f64) -> Operator {
    let h = &m.sz * real(theta.cos()) + &m.sx * real(theta.sin());
    let eig = SymmetricEigen::new(h);
    let exponents: Vec<f64> = eig.eigenvalues.iter().map(|e| -delta * e).collect();
    let top = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = exponents.iter().map(|x| (x - top).exp()).collect();
    let z: f64 = weights.iter().sum();
    let v = &eig.eigenvectors;
    let d = v.nrows();
    let mut rho = Operator::zeros(d, d);
    for (k, w) in weights.iter().enumerate() {
        let col = v.column(k);
        rho += &col * col.adjoint() * real(w / z);
    }
    rho
}

/// Five-point central difference `[f(-2h) - 8f(-h) + 8f(h) - f(2h)] / 12h`.
fn stencil<T, F>(h: f64, f: F) -> T
where
    F: Fn(f64) -> T,
    T: std::ops::Sub<Output = T> + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
{
    (f(-2.0 * h) - f(2.0 * h)) * (1.0 / (12.0 * h)) + (f(h) - f(-h)) * (8.0 / (12.0 * h))
}

/// `∂λρ` by a five-point stencil along `θ(λ) = θ + θ̇ε`, `δ(λ) = δ + δ̇ε`.
pub fn rho_derivative_fd(m: &SpinMatrices, point: &OraclePoint, step: f64) -> Operator {
    let d = m.sz.nrows();
    if point.theta_dot == 0.0 && point.delta_dot == 0.0 {
        return Operator::zeros(d, d);
    }
    let at = |eps: f64| {
        let (t, dl) = point.shifted(eps);
        gibbs_matrix(m, t, dl)
    };
    let (m2, m1, p1, p2) = (at(-2.0 * step), at(-step), at(step), at(2.0 * step));
    ((m2 - p2) + (p1 - m1) * real(8.0)) * real(1.0 / (12.0 * step))
}

/// Solve `∂ρ = ½(Lρ + ρL)` in the eigenbasis of `ρ`.
pub fn sld_lyapunov(rho: &Operator, drho: &Operator) -> Operator {
    let eig = SymmetricEigen::new(rho.clone());
    let v = &eig.eigenvectors;
    let p = &eig.eigenvalues;
    let local = v.adjoint() * drho * v;
    let d = rho.nrows();
    let l = DMatrix::from_fn(d, d, |m, n| {
        let denom = p[m] + p[n];
        if denom > ORACLE_P_FLOOR {
            local[(m, n)] * real(2.0 / denom)
        } else {
            real(0.0)
        }
    });
    v * l * v.adjoint()
}

/// `max |∂ρ - ½(Lρ + ρL)|`.
pub fn sld_residual(rho: &Operator, drho: &Operator, sld: &Operator) -> f64 {
    let anti = (sld * rho + rho * sld) * real(0.5);
    (drho - anti).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `Tr(ρ L²)` with the Lyapunov SLD.
pub fn qfi_oracle(m: &SpinMatrices, point: &OraclePoint, step: f64) -> f64 {
    let rho = gibbs_matrix(m, point.theta, point.delta);
    let drho = rho_derivative_fd(m, point, step);
    let l = sld_lyapunov(&rho, &drho);
    (&rho * &l * &l).trace().re
}

/// Eigenvectors of `n·S` as columns.
fn projector_basis(m: &SpinMatrices, axis: &AxisVector) -> Result<Operator> {
    let op = axis_projection(m, axis)?;
    Ok(SymmetricEigen::new(op).eigenvectors)
}

fn projected_probabilities(basis: &Operator, rho: &Operator) -> Vec<f64> {
    (0..basis.ncols())
        .map(|k| {
            let v = basis.column(k);
            (v.adjoint() * rho * v)[(0, 0)].re
        })
        .collect()
}

/// Outcome probabilities of `n·S` by dense projection.
pub fn probabilities_oracle(
    m: &SpinMatrices,
    theta: f64,
    delta: f64,
    axis: &AxisVector,
) -> Result<Vec<f64>> {
    let basis = projector_basis(m, axis)?;
    Ok(projected_probabilities(&basis, &gibbs_matrix(m, theta, delta)))
}

/// `Σ (∂λ p)² / p` for a projective measurement of `n·S` with `n` fixed in the lab.
pub fn cfi_oracle(m: &SpinMatrices, point: &OraclePoint, axis: &AxisVector, step: f64) -> Result<f64> {
    let basis = projector_basis(m, axis)?;
    let probs_at = |eps: f64| {
        let (t, dl) = point.shifted(eps);
        nalgebra::DVector::from_vec(projected_probabilities(&basis, &gibbs_matrix(m, t, dl)))
    };
    let p = probs_at(0.0);
    let dp = stencil(step, probs_at);
    Ok(p.iter()
        .zip(dp.iter())
        .filter(|(pk, _)| **pk >= ORACLE_P_FLOOR)
        .map(|(pk, dk)| dk * dk / pk)
        .sum())
}

/// `|∂λ⟨n·S⟩|² / Var(n·S)` with dense expectation values.
pub fn ensemble_oracle(m: &SpinMatrices, point: &OraclePoint, axis: &AxisVector, step: f64) -> Result<f64> {
    let op = axis_projection(m, axis)?;
    let mean_at = |eps: f64| {
        let (t, dl) = point.shifted(eps);
        (gibbs_matrix(m, t, dl) * &op).trace().re
    };
    let rho = gibbs_matrix(m, point.theta, point.delta);
    let mean = (&rho * &op).trace().re;
    let var = (&rho * &op * &op).trace().re - mean * mean;
    let slope = stencil(step, mean_at);
    Ok(slope * slope / var)
}

/// Everything the oracle knows about one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub h_oracle: f64,
    pub f_oracle: f64,
    pub sld_oracle: Operator,
    /// Residual of the defining equation for `sld_oracle`.
    pub max_abs_dev: f64,
}

impl OracleReport {
    pub fn compute(m: &SpinMatrices, point: &OraclePoint, axis: &AxisVector) -> Result<Self> {
        let step = default_step(point.delta);
        let rho = gibbs_matrix(m, point.theta, point.delta);
        let drho = rho_derivative_fd(m, point, step);
        let sld = sld_lyapunov(&rho, &drho);
        Ok(Self {
            h_oracle: (&rho * &sld * &sld).trace().re,
            f_oracle: cfi_oracle(m, point, axis, step)?,
            max_abs_dev: sld_residual(&rho, &drho, &sld),
            sld_oracle: sld,
        })
    }
}
