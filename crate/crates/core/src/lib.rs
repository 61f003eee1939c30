//! Polynomial frame approximation of functions on `[-1, 1]` from equispaced
//! samples.
//!
//! The approximation expands in Legendre polynomials that are orthonormal on
//! an extended interval `[-γ, γ]` and solves the least-squares problem with
//! an ε-truncated SVD. Around that operator the crate provides condition
//! number estimates, extremal-polynomial oracles, Markov-type inequality
//! checkers and the sweep drivers behind the `framex` command-line tool.
//!
//! The numerical core is generic over [`Real`]; the aliases at the crate root
//! fix the scalar to `f64`.

pub mod error;
pub mod experiments;
pub mod extremal;
pub mod frame;
pub mod linalg;
pub mod numerics;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type FrameSpec64 = frame::FrameSpec<f64>;
pub type FrameOperator64 = frame::FrameOperator<f64>;
pub type RegularizedFit64 = frame::RegularizedFit<f64>;
pub type SvdFactors64 = linalg::SvdFactors<f64>;
pub type Matrix64 = linalg::Matrix<f64>;
pub type Complex64 = num_complex::Complex<f64>;
