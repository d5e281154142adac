//! Quantum and classical Fisher information for estimating a magnetic field
//! with a spin of arbitrary length in thermal equilibrium.
//!
//! The field has intensity encoded in `δ = βγB` and polar angle `θ`; both may
//! depend on a single parameter `λ`. See [`fisher_quantum`] for the quantum
//! bound, [`fisher_classical`] for spin-projection measurements,
//! [`oracle`] for brute-force reference values and [`estimation`] for a
//! Monte Carlo check of the Cramér-Rao bound.

pub mod error;
pub mod estimation;
pub mod fisher_classical;
pub mod fisher_quantum;
pub mod oracle;
pub mod report;
pub mod spin_algebra;
pub mod thermal;

pub use error::{Error, Result};
pub use fisher_classical::{cfi, ensemble_precision, CfiReport, MeasurementAxis};
pub use fisher_quantum::{optimal_angle, qfi, sld_operator, QfiReport};
pub use report::{fisher_report, FisherReport};
pub use spin_algebra::{AxisVector, Spin, SpinLength};
pub use thermal::{thermal_state, ParamPoint, ThermalSpinState};
