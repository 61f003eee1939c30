//! The regularised frame approximation operator: Legendre frame on an
//! extended interval, least-squares matrix, truncated-SVD solve, evaluation,
//! error measurement and condition numbers.

mod condition;
mod fit;
mod scaling;
mod singular;
mod spec;

pub use condition::{condition_numbers, ConditionNumbers, FineGridFactor};
pub use fit::{assemble, evaluate, fit, FitErrors, FrameOperator, RegularizedFit};
pub use scaling::{epsilon_prime, scaling_m_of_n};
pub use singular::{singular_polynomials, SingularPolynomials};
pub use spec::FrameSpec;

/// Number of fine-grid points used for error and condition measurements.
pub const DEFAULT_FINE_GRID: usize = 50_000;
