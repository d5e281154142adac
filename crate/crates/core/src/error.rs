use thiserror::Error;

/// Errors raised by the spin, Fisher-information and estimation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spin length must satisfy 2S >= 1 (got 2S = {0})")]
    InvalidSpinLength(u32),

    #[error("spin length 2S = {two_s} exceeds the dense-matrix envelope (2S <= {max})")]
    SpinTooLarge { two_s: u32, max: u32 },

    #[error("axis is not a unit vector (|n| - 1 = {0:e})")]
    NonUnitAxis(f64),

    #[error("non-finite value for `{0}`")]
    NonFinite(&'static str),

    #[error("projection 2M = {two_m} is not a valid level of a spin with 2S = {two_s}")]
    ProjectionOutOfRange { two_m: i32, two_s: u32 },

    #[error("parameter is unidentifiable: both theta_dot and delta_dot vanish")]
    Unidentifiable,

    #[error("state was built at delta = {state} but the parameter point has delta = {point}")]
    DeltaMismatch { state: f64, point: f64 },

    #[error("measurement axis is parallel to the field axis; the pure-state ratio is 0/0")]
    DegenerateAxis,

    #[error("measured projection has zero variance; ensemble precision is undefined")]
    ZeroVariance,

    #[error(
        "outcome {outcome} has probability {probability:e} below the floor while its \
         derivative is {derivative:e}: parameter-boundary pathology"
    )]
    OutcomeFloor {
        outcome: usize,
        probability: f64,
        derivative: f64,
    },

    #[error("likelihood is flat on the search interval; the parameter is unidentifiable")]
    FlatLikelihood,

    #[error("likelihood has {0} local maxima on the coarse grid; refine the search interval")]
    NotUnimodal(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(value: f64, name: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(name))
    }
}
