//! Small dense linear-algebra kernels: a column-major matrix, a thin SVD and
//! power iteration.

mod matrix;
mod power;
mod svd;

pub use matrix::Matrix;
pub use power::{largest_eigenvalue, PowerIterationConfig};
pub use svd::{qr_r, svd, SvdFactors};
