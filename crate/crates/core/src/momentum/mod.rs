//! Momentum-space realization of the massless position operator on sampled
//! wavepackets: uncertainty products, operator-identity residuals under
//! refinement, and the regularized position eigenfunctions.
//!
//! The inner product uses the flat measure `d³k`; the exclusion ball around
//! `k = 0` removes the singular points of `H⁻¹` and `H⁻²`. Helicity is zero
//! throughout.

mod eigen;
mod fourier;
mod grid;
mod operators;
mod packet;
mod quadrature;
mod studies;
mod uncertainty;

pub use eigen::{
    eigenfunction_residual, radial_closed_form, radial_convergence, radial_eigenfunction_check,
    EigenConfig, EigenResidualReport, RadialCheck,
};
pub use fourier::{position_space_transform, TransformConfig, TransformProfile, TransformSamples};
pub use grid::GridSpec;
pub use operators::{apply_operator, composed_position, derivative, multiply, OperatorId};
pub use packet::{
    expectation_tensor, field_norm, gaussian_mass_outside, inner, make_gaussian,
    make_gaussian_with, Field, GaussianSpec, LeakTolerance, Wavepacket,
};
pub use quadrature::{
    composite_gauss_legendre, gauss_legendre, log_log_slope, pairwise_sum, par_sum,
};
pub use studies::{commutator_residual_study, halving_ladder, ResidualReport, ResidualTarget};
pub use uncertainty::{decompose_bound, uncertainty_report, UncertaintyReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MomentumError {
    #[error("grid too small: {0}")]
    GridTooSmall(String),
    #[error("moment divergence: {0}")]
    MomentDivergence(String),
    #[error("quadrature budget of {panels} radial panels exceeded")]
    QuadratureBudgetExceeded { panels: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
