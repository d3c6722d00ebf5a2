pub mod algebra;
pub mod classical;
pub mod momentum;
pub mod poincare;
