//! Gibbs states of the Zeeman Hamiltonian `Δ n_Z·S`.
//!
//! Populations follow `p_M ∝ exp(-δ M)` with `δ = Δ / k_B T`; for `δ > 0`
//! the ground state is `M_Z = -S`. Negative `δ` (population inversion) is
//! allowed everywhere.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::spin_algebra::{to_complex, Operator, Spin, SpinLength};

/// Below this `|δ|` the coth-based moments lose digits and the direct sum is used.
pub const DELTA_SWITCH: f64 = 1e-3;

/// Local estimation context at the true parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    /// Polar angle of the field axis in the xz plane.
    pub theta: f64,
    /// Normalized gap `Δ / k_B T`.
    pub delta: f64,
    /// `dθ/dλ`.
    pub theta_dot: f64,
    /// `dδ/dλ`.
    pub delta_dot: f64,
}

impl ParamPoint {
    pub fn new(theta: f64, delta: f64, theta_dot: f64, delta_dot: f64) -> Result<Self> {
        Ok(Self {
            theta: ensure_finite(theta, "theta")?,
            delta: ensure_finite(delta, "delta")?,
            theta_dot: ensure_finite(theta_dot, "theta_dot")?,
            delta_dot: ensure_finite(delta_dot, "delta_dot")?,
        })
    }

    pub fn is_identifiable(&self) -> bool {
        self.theta_dot != 0.0 || self.delta_dot != 0.0
    }

    pub fn require_identifiable(&self) -> Result<()> {
        if self.is_identifiable() {
            Ok(())
        } else {
            Err(Error::Unidentifiable)
        }
    }
}

/// First and second moments of the longitudinal and transverse projections.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean_sz: f64,
    pub mean_sz2: f64,
    pub mean_sx2: f64,
}

impl Moments {
    /// `⟨S_Z²⟩ - ⟨S_Z⟩²`.
    pub fn var_sz(&self) -> f64 {
        (self.mean_sz2 - self.mean_sz * self.mean_sz).max(0.0)
    }
}

/// Thermal populations over the `S_Z` eigenstates, with cached moments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalSpinState {
    s: SpinLength,
    delta: f64,
    populations: Vec<f64>,
    moments: Moments,
    var_sz: f64,
}

impl ThermalSpinState {
    pub fn new(s: SpinLength, delta: f64) -> Result<Self> {
        ensure_finite(delta, "delta")?;
        // exponent -δM is largest at M = -S·sign(δ); shift by it so every weight is <= 1.
        let shift = s.value() * delta.abs();
        let weights: Vec<f64> = s.projections().map(|m| (-delta * m - shift).exp()).collect();
        let z: f64 = weights.iter().sum();
        let populations: Vec<f64> = weights.iter().map(|w| w / z).collect();

        let mean_sz: f64 = s.projections().zip(&populations).map(|(m, p)| p * m).sum();
        let mean_sz2: f64 = s
            .projections()
            .zip(&populations)
            .map(|(m, p)| p * m * m)
            .sum();
        let var_sz: f64 = s
            .projections()
            .zip(&populations)
            .map(|(m, p)| p * (m - mean_sz).powi(2))
            .sum();
        let moments = Moments {
            mean_sz,
            mean_sz2,
            mean_sx2: 0.5 * (s.casimir() - mean_sz2),
        };
        Ok(Self {
            s,
            delta,
            populations,
            moments,
            var_sz,
        })
    }

    pub fn spin_length(&self) -> SpinLength {
        self.s
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `p_M` in basis order `M = S, ..., -S`.
    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn moments(&self) -> Moments {
        self.moments
    }

    pub fn mean_sz(&self) -> f64 {
        self.moments.mean_sz
    }

    pub fn mean_sz2(&self) -> f64 {
        self.moments.mean_sz2
    }

    pub fn mean_sx2(&self) -> f64 {
        self.moments.mean_sx2
    }

    /// `Var(S_Z)`, accumulated as `Σ p (M - ⟨S_Z⟩)²` so it is never negative.
    pub fn var_sz(&self) -> f64 {
        self.var_sz
    }

    /// `∂p_M/∂δ = (⟨S_Z⟩ - M) p_M`.
    pub fn population_derivatives(&self) -> Vec<f64> {
        self.s
            .projections()
            .zip(&self.populations)
            .map(|(m, p)| (self.moments.mean_sz - m) * p)
            .collect()
    }

    pub(crate) fn check_point(&self, point: &ParamPoint) -> Result<()> {
        if self.delta != point.delta {
            return Err(Error::DeltaMismatch {
                state: self.delta,
                point: point.delta,
            });
        }
        Ok(())
    }
}

/// Direct-summation Gibbs state.
pub fn thermal_state(s: SpinLength, delta: f64) -> Result<ThermalSpinState> {
    ThermalSpinState::new(s, delta)
}

/// `coth(x) - 1/x`, accurate through `x -> 0`.
fn langevin(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let x2 = x * x;
        // x/3 - x³/45 + 2x⁵/945 - x⁷/4725 + 2x⁹/93555
        x * (1.0 / 3.0
            + x2 * (-1.0 / 45.0
                + x2 * (2.0 / 945.0 + x2 * (-1.0 / 4725.0 + x2 * (2.0 / 93555.0)))))
    } else {
        1.0 / x.tanh() - 1.0 / x
    }
}

/// Moments from the coth expressions
/// `⟨S_Z⟩ = ½ f_{1/2} - (S+½) f_{S+½}`, `⟨S_Z²⟩ = S(S+1) + f_{1/2}⟨S_Z⟩`,
/// `⟨S_X²⟩ = ½[S(S+1) - ⟨S_Z²⟩]`, with `f_a = coth(aδ)`.
///
/// For `|δ| <= DELTA_SWITCH` the direct sum is returned instead.
pub fn closed_form_moments(s: SpinLength, delta: f64) -> Result<Moments> {
    ensure_finite(delta, "delta")?;
    if delta.abs() <= DELTA_SWITCH {
        return Ok(ThermalSpinState::new(s, delta)?.moments());
    }
    let a = s.value() + 0.5;
    // The 1/δ poles of the two coth terms cancel exactly; subtract them analytically.
    let mean_sz = 0.5 * langevin(0.5 * delta) - a * langevin(a * delta);
    let mean_sz2 = s.casimir() + mean_sz / (0.5 * delta).tanh();
    Ok(Moments {
        mean_sz,
        mean_sz2,
        mean_sx2: 0.5 * (s.casimir() - mean_sz2),
    })
}

/// `U(θ) diag(p) U(θ)†` with `U(θ) = exp(-i S_y θ)`.
pub fn density_matrix(spin: &Spin, state: &ThermalSpinState, theta: f64) -> Operator {
    field_frame_operator(spin, state.populations(), theta)
}

/// `U(θ) diag(v) U(θ)†` for an arbitrary real diagonal `v` in the field frame.
fn field_frame_operator(spin: &Spin, diag: &[f64], theta: f64) -> Operator {
    let u = spin.rotation_y(theta);
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(diag));
    to_complex(&(&u * d * u.transpose()))
}

/// Tilted projections `S_Z = cosθ S_z + sinθ S_x` and `S_X = cosθ S_x - sinθ S_z`.
pub fn field_axes(spin: &Spin, theta: f64) -> (Operator, Operator) {
    let (sin, cos) = theta.sin_cos();
    let c = |v: f64| Complex64::new(v, 0.0);
    let s_z = spin.sz() * c(cos) + spin.sx() * c(sin);
    let s_x = spin.sx() * c(cos) - spin.sz() * c(sin);
    (s_z, s_x)
}
