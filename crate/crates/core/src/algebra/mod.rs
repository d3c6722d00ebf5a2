//! Exact noncommutative polynomial algebra over the Gaussian rationals.

mod generator;
mod ideal;
mod normal;
mod poly;
mod relations;
mod scalar;
mod symmetry;
mod text;

pub use generator::{levi_civita, third_axis, Family, Generator, Mode};
pub use ideal::{
    acts_nonzero_on_scalar_realization, ideal_reduce, ideal_reduce_with, IdealConfig,
    IdealReduction, Membership,
};
pub use normal::{commutator, normal_form};
pub use poly::{Monomial, NCPolynomial, Word};
pub use relations::{helicity_relation, DiscreteSymmetry, ModeRelations, DEFAULT_REWRITE_BUDGET};
pub use scalar::GaussianRational;
pub use symmetry::{adjoint, apply_discrete_symmetry};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("rewrite budget of {budget} steps exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("generator {generator} is not primitive in {mode} mode")]
    UnknownGenerator { generator: Generator, mode: Mode },
    #[error("invalid power {power} of {generator}")]
    InvalidPower { generator: Generator, power: i32 },
    #[error("degree cutoff {cutoff} is below the expression degree {degree}")]
    CutoffTooSmall { cutoff: u32, degree: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}
