//! Special-relativistic kinematics for a massless particle: the dynamic
//! frame-translation experiment and the projected Poisson bracket
//! `{qᵢ, pⱼ} = pᵢpⱼ/p²`.

mod bracket;
mod kinematics;

pub use bracket::{
    bivector, jacobiator, modified_bracket, random_points, Coordinate, FnPhase, PhaseSpaceFunction,
    PhaseSpacePoint,
};
pub use kinematics::{dynamic_translation_experiment, Event, ExperimentResult, Velocity};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassicalError {
    #[error("invalid boost: |v| = {speed} is not below 1")]
    InvalidBoost { speed: f64 },
    #[error("singular momentum: |p| = 0")]
    SingularMomentum,
    #[error("invalid velocity: {0}")]
    InvalidVelocity(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
